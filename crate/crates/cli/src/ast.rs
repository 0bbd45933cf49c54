//! Syntax tree of the presentation language.
//!
//! A source file is a sequence of declarations:
//!
//! ```text
//! dga S2 { gen x: 2; gen y: 3; d x = 0; d y = x^2; }
//! morphism f : S2 -> T { x -> w; y -> 0; }
//! homotopy H : S2 -> T { x -> w * (1 - t) + c * dt; }
//! ledger L { theta = 0; w = 2; c = 2; }
//! complex disk { simplex 0 1 2; relative 0 1; }
//! ```
//!
//! Expressions are sums of terms; a term is a rational coefficient times a
//! product of powers of names, with `t` and `dt` admitted inside homotopy
//! blocks. Parse → print → parse is the identity on this tree.

use num_rational::BigRational;

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Dga(DgaDecl),
    Morphism(MapDecl),
    Homotopy(MapDecl),
    Ledger(LedgerDecl),
    Complex(ComplexDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaDecl {
    pub name: String,
    pub generators: Vec<GenDecl>,
    pub differentials: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub degree: u32,
    pub weight: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerDecl {
    pub name: String,
    pub theta: Option<Rat>,
    pub weights: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub simplices: Vec<Vec<usize>>,
    pub relative: Vec<Vec<usize>>,
}

/// Normalized sum of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

/// coefficient · Π factor^power, with optional interval factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rat,
    pub factors: Vec<(Atom, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    Name(String),
    T,
    Dt,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
