//! Polynomials in the family parameters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Rational;
use super::RingError;

/// A family parameter `C_{h,t}`: the coefficient of the `t`-th complement
/// term in the tail of the `h`-th generic marked element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    pub head: u32,
    pub tail: u32,
}

impl Param {
    pub fn new(head: u32, tail: u32) -> Self {
        Param { head, tail }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{{{},{}}}", self.head, self.tail)
    }
}

/// Power product of parameters, sorted by parameter with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial(Vec<(Param, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(p: Param) -> Self {
        ParamMonomial(vec![(p, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Param, u32)] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        ParamMonomial(out)
    }
}

// Graded: higher degree first when iterating a map in reverse.
impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of `ℚ[C]`. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl ParamPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(ParamMonomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(p: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ParamMonomial::var(p), Rational::one());
        ParamPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ParamMonomial, Rational)>) -> Self {
        let mut out = ParamPoly::default();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parameters occurring in the polynomial, sorted.
    pub fn params(&self) -> Vec<Param> {
        let mut out: Vec<Param> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(p, _)| p))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Constant value, if the polynomial has no parametric term.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&ParamMonomial::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: ParamMonomial, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        let remove = {
            let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *slot += c;
            Zero::is_zero(slot)
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    /// Exact value at `assignment`.
    pub fn evaluate(&self, assignment: &HashMap<Param, Rational>) -> Result<Rational, RingError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(p, e) in m.factors() {
                let v = assignment.get(&p).ok_or(RingError::MissingParameter(p))?;
                value *= num_traits::pow(v.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Multiplies by a unit so that the leading coefficient becomes one.
    pub fn monic(&self) -> Self {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, lead)) => {
                let inv = lead.recip();
                ParamPoly {
                    terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &inv)).collect(),
                }
            }
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl super::coeff::Coefficient for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }

    fn one() -> Self {
        ParamPoly::constant(<Rational as One>::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| One::is_one(&c))
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = ParamPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn from_rational(value: Rational) -> Self {
        ParamPoly::constant(value)
    }

    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if Zero::is_zero(&c) {
            None
        } else {
            Some(ParamPoly::constant(c.recip()))
        }
    }

    fn is_parametric(&self) -> bool {
        self.terms.keys().any(|m| !m.is_one())
    }

    fn factor_text(&self) -> (bool, String) {
        if let Some(c) = self.as_constant() {
            return c.factor_text();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let (negative, factor) = c.factor_text();
            let body = if factor.is_empty() {
                m.to_string()
            } else {
                format!("{factor}*{m}")
            };
            return (negative, body);
        }
        (false, format!("({self})"))
    }

    fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }
}
