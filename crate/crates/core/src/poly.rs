//! Integer polynomials in two variables and inequalities between them.
//!
//! Certificates quantify over every pair of positive integers, so their steps
//! are stored as polynomial inequalities rather than numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `Σ c·x^i·y^j` with nonzero integer coefficients keyed by `(i, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Poly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term((i, j), c.into());
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        let mut out = Poly::zero();
        for (&key, c) in &self.terms {
            out.add_term(key, c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// True when every coefficient is nonnegative, so the polynomial is
    /// nonnegative on the whole positive quadrant.
    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True for a single term `c·x^i·y^j` with `c > 0`: such a factor is
    /// positive whenever `x, y >= 1`.
    pub fn is_positive_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_positive())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * Pow::pow(x, i) * Pow::pow(y, j))
            .sum()
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn display_with<'a>(&'a self, names: [&'a str; 2]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: [&'a str; 2],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.poly.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.cmp(a)));
        for (n, key) in keys.iter().enumerate() {
            let c = &self.poly.terms[key];
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            match (n, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || *key == (0, 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in self.names.iter().zip([key.0, key.1]) {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    exp: [u32; 2],
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| TermRepr {
                coeff: c.to_string(),
                exp: [i, j],
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = Poly::zero();
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(serde::de::Error::custom)?;
            out.add_term((t.exp[0], t.exp[1]), c);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        self == Relation::Lt
    }

    pub fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
        })
    }
}

/// `lhs rel rhs` between two polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: Poly,
    pub relation: Relation,
    pub rhs: Poly,
}

impl Inequality {
    pub fn new(lhs: Poly, relation: Relation, rhs: Poly) -> Self {
        Inequality { lhs, relation, rhs }
    }

    /// `rhs - lhs`, which the inequality asserts is positive (or nonnegative).
    pub fn gap(&self) -> Poly {
        &self.rhs - &self.lhs
    }

    /// Both sides multiplied by `factor`.
    pub fn times(&self, factor: &Poly) -> Inequality {
        Inequality::new(&self.lhs * factor, self.relation, &self.rhs * factor)
    }

    pub fn holds_at(&self, x: &BigInt, y: &BigInt) -> bool {
        self.relation
            .holds(&self.lhs.eval(x, y), &self.rhs.eval(x, y))
    }

    pub fn display_with<'a>(&'a self, names: [&'a str; 2]) -> String {
        format!(
            "{} {} {}",
            self.lhs.display_with(names),
            self.relation,
            self.rhs.display_with(names)
        )
    }
}
