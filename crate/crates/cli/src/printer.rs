//! Canonical printer for the presentation language. Printing a parsed tree
//! and reparsing it reproduces the tree.

use num_traits::{One, Signed};

use crate::ast::*;

pub fn print_source(file: &SourceFile) -> String {
    let mut out = String::new();
    for item in &file.items {
        match item {
            Item::Dga(d) => print_dga(d, &mut out),
            Item::Morphism(m) => print_map("morphism", m, &mut out),
            Item::Homotopy(m) => print_map("homotopy", m, &mut out),
            Item::Ledger(l) => print_ledger(l, &mut out),
            Item::Complex(c) => print_complex(c, &mut out),
        }
        out.push('\n');
    }
    out
}

fn print_dga(d: &DgaDecl, out: &mut String) {
    out.push_str(&format!("dga {} {{\n", d.name));
    for g in &d.generators {
        match g.weight {
            Some(w) => out.push_str(&format!("  gen {}: {} weight {};\n", g.name, g.degree, w)),
            None => out.push_str(&format!("  gen {}: {};\n", g.name, g.degree)),
        }
    }
    for (name, expr) in &d.differentials {
        out.push_str(&format!("  d {} = {};\n", name, print_expr(expr)));
    }
    out.push_str("}\n");
}

fn print_map(keyword: &str, m: &MapDecl, out: &mut String) {
    out.push_str(&format!(
        "{keyword} {} : {} -> {} {{\n",
        m.name, m.source, m.target
    ));
    for (name, expr) in &m.images {
        out.push_str(&format!("  {} -> {};\n", name, print_expr(expr)));
    }
    out.push_str("}\n");
}

fn print_ledger(l: &LedgerDecl, out: &mut String) {
    out.push_str(&format!("ledger {} {{\n", l.name));
    if let Some(theta) = &l.theta {
        out.push_str(&format!("  theta = {theta};\n"));
    }
    for (name, w) in &l.weights {
        out.push_str(&format!("  {name} = {w};\n"));
    }
    out.push_str("}\n");
}

fn print_complex(c: &ComplexDecl, out: &mut String) {
    out.push_str(&format!("complex {} {{\n", c.name));
    for s in &c.simplices {
        let words: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("  simplex {};\n", words.join(" ")));
    }
    for s in &c.relative {
        let words: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("  relative {};\n", words.join(" ")));
    }
    out.push_str("}\n");
}

pub fn print_expr(e: &Expr) -> String {
    if e.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in e.terms.iter().enumerate() {
        let coeff = term.coeff.clone();
        let (sep, magnitude) = if i == 0 {
            (String::new(), coeff)
        } else if coeff.is_negative() {
            (" - ".to_string(), -coeff)
        } else {
            (" + ".to_string(), coeff)
        };
        out.push_str(&sep);
        let factors: Vec<String> = term
            .factors
            .iter()
            .map(|(atom, power)| {
                let base = match atom {
                    Atom::Name(n) => n.clone(),
                    Atom::T => "t".to_string(),
                    Atom::Dt => "dt".to_string(),
                };
                if *power == 1 {
                    base
                } else {
                    format!("{base}^{power}")
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&factors.join(" * "));
        } else {
            out.push_str(&format!("{} * {}", magnitude, factors.join(" * ")));
        }
    }
    out
}
