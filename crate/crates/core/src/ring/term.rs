use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

/// Exponents of a power product `x_0^{a_0} ··· x_n^{a_n}`; index `i` is `x_i`.
///
/// Variables are ordered `x_0 < x_1 < ··· < x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    /// The constant term `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// The variable `x_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of `min(x^α)`, the smallest variable with positive exponent.
    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Index of the largest multiplicative variable in the Pommaret sense.
    ///
    /// This is `min(x^α)`; the constant term has every variable multiplicative.
    pub fn mult_bound(&self) -> usize {
        self.min_var().unwrap_or(self.0.len() - 1)
    }

    /// `true` when every variable of `self` is at most `x_bound`.
    pub fn only_vars_up_to(&self, bound: usize) -> bool {
        self.0[bound + 1..].iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if self.divides(other) {
            Some(ExponentVector(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut out = self.clone();
        out.0[i] = e;
        out
    }

    pub fn times_var(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.0[i] += 1;
        out
    }

    /// Lexicographic comparison with `x_n` most significant.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }

    /// Degree reverse lexicographic comparison: total degree first, then the
    /// term with the smaller exponent in the smallest differing variable wins.
    pub fn cmp_degrevlex(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }

    /// Writes the power product as `x2^2*x1`; the constant term writes nothing.
    pub fn write_product(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Mul for &ExponentVector {
    type Output = ExponentVector;

    fn mul(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            self.write_product(f)
        }
    }
}

/// All exponent vectors of total degree `degree` in the variables
/// `x_0..=x_last` (all other exponents zero), in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, last: usize, degree: u32) -> Vec<ExponentVector> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if pos == 0 {
            cur[0] = left;
            out.push(ExponentVector(cur.clone()));
            cur[0] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos - 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    rec(last, degree, &mut cur, &mut out);
    out
}

/// Number of variables and the degree shifts of the free module
/// `S^m_d = ⊕ S(-d_k) e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleLayout {
    nvars: usize,
    weights: Vec<i64>,
}

impl FreeModuleLayout {
    /// Panics if `nvars == 0` or `weights` is empty.
    pub fn new(nvars: usize, weights: Vec<i64>) -> Self {
        assert!(nvars >= 1, "at least one variable");
        assert!(!weights.is_empty(), "free module of rank zero");
        FreeModuleLayout { nvars, weights }
    }

    /// The ring `S` itself, as a rank-one module with weight zero.
    pub fn ring(nvars: usize) -> Self {
        Self::new(nvars, vec![0])
    }

    /// Number of variables `n + 1`.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The index `n` of the largest variable.
    pub fn n(&self) -> usize {
        self.nvars - 1
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> i64 {
        self.weights[k]
    }

    pub fn term_degree(&self, t: &ModuleTerm) -> i64 {
        t.exponent.degree() as i64 + self.weights[t.component]
    }
}

/// A module term `x^α e_k`. Components are zero-based; they print as
/// `e1..em`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleTerm {
    pub exponent: ExponentVector,
    pub component: usize,
}

impl ModuleTerm {
    pub fn new(exponent: ExponentVector, component: usize) -> Self {
        ModuleTerm { exponent, component }
    }

    pub fn times(&self, multiplier: &ExponentVector) -> Self {
        ModuleTerm {
            exponent: &self.exponent * multiplier,
            component: self.component,
        }
    }

    pub fn divides(&self, other: &ModuleTerm) -> bool {
        self.component == other.component && self.exponent.divides(&other.exponent)
    }

    /// Writes the term; the component marker is omitted in rank one.
    pub fn write(&self, rank: usize, f: &mut impl fmt::Write) -> fmt::Result {
        let constant = self.exponent.is_one();
        if !constant {
            self.exponent.write_product(f)?;
        }
        if rank > 1 {
            if !constant {
                f.write_char('*')?;
            }
            write!(f, "e{}", self.component + 1)
        } else if constant {
            f.write_char('1')
        } else {
            Ok(())
        }
    }

    pub fn display(&self, rank: usize) -> String {
        let mut s = String::new();
        self.write(rank, &mut s).unwrap();
        s
    }
}

// Print order: by component, then larger terms in degrevlex first.
impl Ord for ModuleTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.component
            .cmp(&other.component)
            .then_with(|| other.exponent.cmp_degrevlex(&self.exponent))
    }
}

impl PartialOrd for ModuleTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
