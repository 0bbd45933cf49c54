//! Lowering of parsed declarations into algebra, morphism, homotopy,
//! ledger, and complex values.

use std::collections::BTreeMap;

use sullivan_cochain::SimplicialPair;
use sullivan_core::{
    CylinderElement, Element, FreeCdga, Generator, Homotopy, Morphism, Signature, WeightLedger,
};

use crate::ast::*;

#[derive(Debug)]
pub enum SemanticError {
    UnknownDga(String),
    UnknownGenerator { context: String, name: String },
    Core(sullivan_core::Error),
    Cochain(sullivan_cochain::Error),
    Other(String),
}

impl std::fmt::Display for SemanticError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SemanticError::UnknownDga(name) => write!(f, "unknown dga `{name}`"),
            SemanticError::UnknownGenerator { context, name } => {
                write!(f, "{context}: unknown generator `{name}`")
            }
            SemanticError::Core(e) => write!(f, "{e}"),
            SemanticError::Cochain(e) => write!(f, "{e}"),
            SemanticError::Other(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for SemanticError {}

impl From<sullivan_core::Error> for SemanticError {
    fn from(e: sullivan_core::Error) -> Self {
        SemanticError::Core(e)
    }
}

impl From<sullivan_cochain::Error> for SemanticError {
    fn from(e: sullivan_cochain::Error) -> Self {
        SemanticError::Cochain(e)
    }
}

pub type Result<T> = std::result::Result<T, SemanticError>;

#[derive(Default)]
pub struct Context {
    pub dgas: BTreeMap<String, FreeCdga>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub homotopies: BTreeMap<String, Homotopy>,
    pub ledgers: BTreeMap<String, LedgerDecl>,
    pub complexes: BTreeMap<String, SimplicialPair>,
}

impl Context {
    pub fn from_source(file: &SourceFile) -> Result<Context> {
        let mut ctx = Context::default();
        for item in &file.items {
            match item {
                Item::Dga(decl) => {
                    let algebra = lower_dga(decl)?;
                    ctx.dgas.insert(decl.name.clone(), algebra);
                }
                Item::Morphism(decl) => {
                    let m = lower_morphism(&ctx, decl)?;
                    ctx.morphisms.insert(decl.name.clone(), m);
                }
                Item::Homotopy(decl) => {
                    let h = lower_homotopy(&ctx, decl)?;
                    ctx.homotopies.insert(decl.name.clone(), h);
                }
                Item::Ledger(decl) => {
                    ctx.ledgers.insert(decl.name.clone(), decl.clone());
                }
                Item::Complex(decl) => {
                    let pair = SimplicialPair::new(&decl.simplices, &decl.relative)?;
                    ctx.complexes.insert(decl.name.clone(), pair);
                }
            }
        }
        Ok(ctx)
    }

    pub fn dga(&self, name: &str) -> Result<&FreeCdga> {
        self.dgas
            .get(name)
            .ok_or_else(|| SemanticError::UnknownDga(name.to_string()))
    }

    /// Resolves a ledger declaration against an algebra.
    pub fn ledger_for(&self, name: &str, algebra: &FreeCdga) -> Result<WeightLedger> {
        let decl = self
            .ledgers
            .get(name)
            .ok_or_else(|| SemanticError::Other(format!("unknown ledger `{name}`")))?;
        let mut ledger = WeightLedger::from_signature(algebra.signature());
        for (gname, w) in &decl.weights {
            let id = algebra
                .by_name(gname)
                .map_err(|_| SemanticError::UnknownGenerator {
                    context: format!("ledger {name}"),
                    name: gname.clone(),
                })?;
            ledger.register(id, *w);
        }
        if let Some(theta) = &decl.theta {
            ledger = ledger.with_dt_exponent(theta.clone());
        }
        Ok(ledger)
    }
}

pub fn lower_dga(decl: &DgaDecl) -> Result<FreeCdga> {
    let gens: Vec<Generator> = decl
        .generators
        .iter()
        .map(|g| match g.weight {
            Some(w) => Generator::with_weight(g.name.clone(), g.degree, w),
            None => Generator::new(g.name.clone(), g.degree),
        })
        .collect();
    let sig = Signature::new(gens)?;
    let mut diffs = Vec::new();
    for (gname, expr) in &decl.differentials {
        let id = sig
            .lookup(gname)
            .ok_or_else(|| SemanticError::UnknownGenerator {
                context: format!("dga {}", decl.name),
                name: gname.clone(),
            })?;
        let elem = lower_element(&sig, &decl.name, expr)?;
        diffs.push((id, elem));
    }
    Ok(FreeCdga::new(sig, diffs)?)
}

pub fn lower_element(
    sig: &std::sync::Arc<Signature>,
    context: &str,
    expr: &Expr,
) -> Result<Element> {
    let mut out = Element::zero(sig);
    for term in &expr.terms {
        let mut value = Element::constant(sig, term.coeff.clone());
        for (atom, power) in &term.factors {
            match atom {
                Atom::Name(name) => {
                    let id = sig
                        .lookup(name)
                        .ok_or_else(|| SemanticError::UnknownGenerator {
                            context: context.to_string(),
                            name: name.clone(),
                        })?;
                    value = value.try_mul(&Element::generator(sig, id).pow(*power))?;
                }
                Atom::T | Atom::Dt => {
                    return Err(SemanticError::Other(format!(
                        "{context}: interval symbols are only allowed in homotopy blocks"
                    )))
                }
            }
        }
        out = &out + &value;
    }
    Ok(out)
}

pub fn lower_cylinder(
    sig: &std::sync::Arc<Signature>,
    context: &str,
    expr: &Expr,
) -> Result<CylinderElement> {
    let mut out = CylinderElement::zero(sig);
    for term in &expr.terms {
        let mut value = Element::constant(sig, term.coeff.clone());
        let mut t_power = 0u32;
        let mut dt_count = 0u32;
        for (atom, power) in &term.factors {
            match atom {
                Atom::Name(name) => {
                    let id = sig
                        .lookup(name)
                        .ok_or_else(|| SemanticError::UnknownGenerator {
                            context: context.to_string(),
                            name: name.clone(),
                        })?;
                    value = value.try_mul(&Element::generator(sig, id).pow(*power))?;
                }
                Atom::T => t_power += power,
                Atom::Dt => dt_count += power,
            }
        }
        let part = match dt_count {
            0 => CylinderElement::t_term(&value, t_power),
            1 => CylinderElement::dt_term(&value, t_power),
            _ => continue, // dt ∧ dt = 0
        };
        out = &out + &part;
    }
    Ok(out)
}

fn lower_morphism(ctx: &Context, decl: &MapDecl) -> Result<Morphism> {
    let source = ctx.dga(&decl.source)?.clone();
    let target = ctx.dga(&decl.target)?.clone();
    let mut images = vec![Element::zero(target.signature()); source.signature().len()];
    for (gname, expr) in &decl.images {
        let id = source
            .by_name(gname)
            .map_err(|_| SemanticError::UnknownGenerator {
                context: format!("morphism {}", decl.name),
                name: gname.clone(),
            })?;
        images[id.0 as usize] =
            lower_element(target.signature(), &format!("morphism {}", decl.name), expr)?;
    }
    Ok(Morphism::new(source, target, images)?)
}

fn lower_homotopy(ctx: &Context, decl: &MapDecl) -> Result<Homotopy> {
    let source = ctx.dga(&decl.source)?.clone();
    let target = ctx.dga(&decl.target)?.clone();
    let mut images = vec![CylinderElement::zero(target.signature()); source.signature().len()];
    for (gname, expr) in &decl.images {
        let id = source
            .by_name(gname)
            .map_err(|_| SemanticError::UnknownGenerator {
                context: format!("homotopy {}", decl.name),
                name: gname.clone(),
            })?;
        images[id.0 as usize] =
            lower_cylinder(target.signature(), &format!("homotopy {}", decl.name), expr)?;
    }
    // Homotopy blocks are constructed without the chain-map check; the
    // `validate` command reports validity instead of failing to build.
    Ok(Homotopy::new_unchecked(source, target, images)?)
}

/// Renders an element back into expression syntax (used when printing
/// computed homotopies as presentation text).
pub fn element_to_expr(e: &Element) -> Expr {
    let mut terms = Vec::new();
    for (m, c) in e.terms() {
        let factors: Vec<(Atom, u32)> = m
            .factors()
            .iter()
            .map(|&(g, p)| {
                (
                    Atom::Name(e.signature().generator(g).name.clone()),
                    p,
                )
            })
            .collect();
        terms.push(Term {
            coeff: c.clone(),
            factors,
        });
    }
    Expr { terms }
}

pub fn cylinder_to_expr(u: &CylinderElement) -> Expr {
    let mut terms = Vec::new();
    for (&i, a) in u.t_terms() {
        for mut term in element_to_expr(a).terms {
            if i > 0 {
                term.factors.push((Atom::T, i));
            }
            terms.push(term);
        }
    }
    for (&i, a) in u.dt_terms() {
        for mut term in element_to_expr(a).terms {
            if i > 0 {
                term.factors.push((Atom::T, i));
            }
            term.factors.push((Atom::Dt, 1));
            terms.push(term);
        }
    }
    Expr { terms }
}
