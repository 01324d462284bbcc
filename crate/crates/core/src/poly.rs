//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The engine never touches floating point: weights, moments and cumulants
//! are values of [`MPoly`] over a small symbol set. The concrete alias
//! [`CumulantPolynomial`] uses the three entry cumulants `k4`, `kdiag4`,
//! `k6` that survive in third-order limits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A formal variable usable in an [`MPoly`].
pub trait Sym: Clone + Ord + Eq + std::hash::Hash + fmt::Debug + Send + Sync {
    fn render(&self) -> String;
}

/// Product of variables with positive exponents, sorted by variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<V: Sym>(Vec<(V, u32)>);

impl<V: Sym> Monomial<V> {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: V) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(V, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial<V>) -> Monomial<V> {
        let mut exps: BTreeMap<V, u32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            *exps.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(exps.into_iter().collect())
    }

    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.render()
                } else {
                    format!("{}^{}", v.render(), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Sparse polynomial: canonical map from monomials to nonzero rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly<V: Sym> {
    terms: BTreeMap<Monomial<V>, BigRational>,
}

impl<V: Sym> MPoly<V> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MPoly { terms }
    }

    pub fn constant_i64(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn constant_int(c: BigInt) -> Self {
        Self::constant(BigRational::from_integer(c))
    }

    pub fn var(v: V) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigRational::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial, zero if absent.
    pub fn coeff(&self, mono: &Monomial<V>) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, mono: Monomial<V>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            let keys: Vec<Monomial<V>> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(m, _)| m.clone())
                .collect();
            for k in keys {
                self.terms.remove(&k);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly<V> {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly<V> {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitute rational values for every variable.
    pub fn evaluate(&self, assign: &impl Fn(&V) -> BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (v, e) in mono.exponents() {
                let val = assign(v);
                for _ in 0..*e {
                    term *= val.clone();
                }
            }
            total += term;
        }
        total
    }

    /// Canonical human-readable rendering, constant term first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            let lead_one = mag.is_one() && !mono.is_unit();
            let body = if mono.is_unit() {
                format!("{mag}")
            } else if lead_one {
                mono.render()
            } else {
                format!("{}*{}", mag, mono.render())
            };
            if i == 0 {
                if coeff.is_negative() {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if coeff.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

impl<V: Sym> std::ops::Add for MPoly<V> {
    type Output = MPoly<V>;
    fn add(mut self, rhs: MPoly<V>) -> MPoly<V> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<V: Sym> std::ops::Sub for MPoly<V> {
    type Output = MPoly<V>;
    fn sub(self, rhs: MPoly<V>) -> MPoly<V> {
        self + rhs.neg()
    }
}

impl<V: Sym> MPoly<V> {
    pub fn neg(&self) -> MPoly<V> {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<V: Sym> std::ops::Mul for MPoly<V> {
    type Output = MPoly<V>;
    fn mul(self, rhs: MPoly<V>) -> MPoly<V> {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Sym> fmt::Display for MPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The entry statistics of a Wigner matrix that survive at third order:
/// the off-diagonal fourth and sixth mixed cumulants and the diagonal
/// fourth cumulant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EntrySym {
    K4,
    KDiag4,
    K6,
}

impl Sym for EntrySym {
    fn render(&self) -> String {
        match self {
            EntrySym::K4 => "k4".to_string(),
            EntrySym::KDiag4 => "kdiag4".to_string(),
            EntrySym::K6 => "k6".to_string(),
        }
    }
}

pub type CumulantPolynomial = MPoly<EntrySym>;

impl CumulantPolynomial {
    /// Substitute concrete entry cumulants.
    pub fn evaluate_entry(&self, k4: &BigRational, kdiag4: &BigRational, k6: &BigRational) -> BigRational {
        self.evaluate(&|v| match v {
            EntrySym::K4 => k4.clone(),
            EntrySym::KDiag4 => kdiag4.clone(),
            EntrySym::K6 => k6.clone(),
        })
    }

    /// JSON of the documented schema:
    /// `{"terms":[{"coeff":"p/q","mono":{"k4":a,"kdiag4":b,"k6":c}}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(mono, coeff)| {
                let mut exps = serde_json::Map::new();
                let get = |want: EntrySym| {
                    mono.exponents()
                        .iter()
                        .find(|(v, _)| *v == want)
                        .map_or(0, |(_, e)| *e)
                };
                exps.insert("k4".into(), get(EntrySym::K4).into());
                exps.insert("kdiag4".into(), get(EntrySym::KDiag4).into());
                exps.insert("k6".into(), get(EntrySym::K6).into());
                serde_json::json!({ "coeff": coeff.to_string(), "mono": exps })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}
