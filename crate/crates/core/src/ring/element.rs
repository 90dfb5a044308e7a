use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::Coefficient;
use super::term::{ExponentVector, FreeModuleLayout, ModuleTerm};
use super::RingError;

/// A polynomial of `S` as a list of `(term, coefficient)` pairs.
pub type Poly<C> = Vec<(ExponentVector, C)>;

/// Homogeneous element of `S^m_d`, stored sparsely with no zero coefficients.
///
/// The zero element has no degree and is compatible with every degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleElement<C> {
    layout: Arc<FreeModuleLayout>,
    terms: BTreeMap<ModuleTerm, C>,
}

impl<C: Coefficient> ModuleElement<C> {
    pub fn zero(layout: Arc<FreeModuleLayout>) -> Self {
        ModuleElement {
            layout,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(layout: Arc<FreeModuleLayout>, term: ModuleTerm, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(term, coeff);
        }
        ModuleElement { layout, terms }
    }

    /// Collects terms, merging repeats and dropping zeros.
    pub fn from_terms(
        layout: Arc<FreeModuleLayout>,
        terms: impl IntoIterator<Item = (ModuleTerm, C)>,
    ) -> Result<Self, RingError> {
        let mut out = BTreeMap::<ModuleTerm, C>::new();
        for (t, c) in terms {
            if t.component >= layout.rank() {
                return Err(RingError::ComponentOutOfRange {
                    component: t.component + 1,
                    rank: layout.rank(),
                });
            }
            if t.exponent.nvars() != layout.nvars() {
                return Err(RingError::VariableCount {
                    expected: layout.nvars(),
                    found: t.exponent.nvars(),
                });
            }
            accumulate(&mut out, t, &c);
        }
        let element = ModuleElement { layout, terms: out };
        element.check_homogeneous()?;
        Ok(element)
    }

    fn check_homogeneous(&self) -> Result<(), RingError> {
        let mut degrees = self.terms.keys().map(|t| self.layout.term_degree(t));
        if let Some(first) = degrees.next() {
            if let Some(other) = degrees.find(|&d| d != first) {
                return Err(RingError::HeterogeneousElement { first, other });
            }
        }
        Ok(())
    }

    /// Re-validates the element: zero entries removed, homogeneity checked.
    pub fn canonicalize(&self) -> Result<Self, RingError> {
        Self::from_terms(
            self.layout.clone(),
            self.terms.iter().map(|(t, c)| (t.clone(), c.clone())),
        )
    }

    pub fn layout(&self) -> &Arc<FreeModuleLayout> {
        &self.layout
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ModuleTerm, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ModuleTerm, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next().map(|t| self.layout.term_degree(t))
    }

    pub fn coefficient(&self, t: &ModuleTerm) -> Option<&C> {
        self.terms.get(t)
    }

    pub fn support(&self) -> impl Iterator<Item = &ModuleTerm> {
        self.terms.keys()
    }

    /// `x^t · e`.
    pub fn mul_term(&self, t: &ExponentVector) -> Self {
        ModuleElement {
            layout: self.layout.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.times(t), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.layout.clone());
        }
        ModuleElement {
            layout: self.layout.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, d)| {
                    let p = d.mul(c);
                    (!p.is_zero()).then(|| (m.clone(), p))
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ModuleElement {
            layout: self.layout.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RingError> {
        if self.layout != other.layout {
            return Err(RingError::LayoutMismatch);
        }
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) if a != b => Err(RingError::HeterogeneousElement { first: a, other: b }),
            _ => Ok(()),
        }
    }

    /// `self += c · x^multiplier · other`.
    pub fn add_scaled(
        &mut self,
        c: &C,
        multiplier: &ExponentVector,
        other: &Self,
    ) -> Result<(), RingError> {
        if c.is_zero() || other.is_zero() {
            return Ok(());
        }
        if self.layout != other.layout {
            return Err(RingError::LayoutMismatch);
        }
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            let b = b + multiplier.degree() as i64;
            if a != b {
                return Err(RingError::HeterogeneousElement { first: a, other: b });
            }
        }
        for (t, d) in &other.terms {
            accumulate(&mut self.terms, t.times(multiplier), &d.mul(c));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            accumulate(&mut out.terms, t.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    /// The polynomial coordinate of component `k`, with the weight removed.
    pub fn component_poly(&self, k: usize) -> Poly<C> {
        self.terms
            .iter()
            .filter(|(t, _)| t.component == k)
            .map(|(t, c)| (t.exponent.clone(), c.clone()))
            .collect()
    }

    /// `p · self` for a homogeneous polynomial `p`.
    pub fn mul_poly(&self, p: &[(ExponentVector, C)]) -> Result<Self, RingError> {
        let mut out = Self::zero(self.layout.clone());
        for (m, c) in p {
            out.add_scaled(c, m, self)?;
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, dropping the ones that become zero.
    pub fn try_map_coefficients<D: Coefficient, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<ModuleElement<D>, E> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(t.clone(), d);
            }
        }
        Ok(ModuleElement {
            layout: self.layout.clone(),
            terms,
        })
    }

    /// Moves the element into another layout, renumbering components with
    /// `relabel`; terms mapped to `None` must be absent.
    pub fn relabel(
        &self,
        layout: Arc<FreeModuleLayout>,
        relabel: impl Fn(usize) -> Option<usize>,
    ) -> Result<Self, RingError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            match relabel(t.component) {
                Some(k) => terms.push((ModuleTerm::new(t.exponent.clone(), k), c.clone())),
                None => {
                    return Err(RingError::ComponentOutOfRange {
                        component: t.component + 1,
                        rank: layout.rank(),
                    })
                }
            }
        }
        Self::from_terms(layout, terms)
    }

    /// Writes the element with `first` (if any) leading.
    pub fn write_with_head(
        &self,
        head: Option<&ModuleTerm>,
        f: &mut impl fmt::Write,
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        let rank = self.layout.rank();
        let mut first = true;
        if let Some(h) = head {
            if let Some(c) = self.terms.get(h) {
                let (negative, factor) = c.factor_text();
                if negative {
                    f.write_char('-')?;
                }
                f.write_char('[')?;
                write_term_with_factor(f, &factor, h, rank)?;
                f.write_char(']')?;
                first = false;
            }
        }
        for (t, c) in &self.terms {
            if head == Some(t) {
                continue;
            }
            let (negative, factor) = c.factor_text();
            match (first, negative) {
                (true, true) => f.write_char('-')?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            write_term_with_factor(f, &factor, t, rank)?;
        }
        Ok(())
    }
}

fn write_term_with_factor(
    f: &mut impl fmt::Write,
    factor: &str,
    t: &ModuleTerm,
    rank: usize,
) -> fmt::Result {
    let constant = t.exponent.is_one() && rank == 1;
    if factor.is_empty() {
        t.write(rank, f)
    } else if constant {
        f.write_str(factor)
    } else {
        f.write_str(factor)?;
        f.write_char('*')?;
        t.write(rank, f)
    }
}

fn accumulate<C: Coefficient>(map: &mut BTreeMap<ModuleTerm, C>, t: ModuleTerm, c: &C) {
    if c.is_zero() {
        return;
    }
    match map.entry(t) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign(c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<C: Coefficient> fmt::Display for ModuleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with_head(None, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::{integer, Rational};
    use proptest::prelude::*;

    fn layout(nvars: usize) -> Arc<FreeModuleLayout> {
        Arc::new(FreeModuleLayout::ring(nvars))
    }

    fn term(e: &[u32]) -> ModuleTerm {
        ModuleTerm::new(ExponentVector::new(e.to_vec()), 0)
    }

    fn elem(l: &Arc<FreeModuleLayout>, terms: &[(&[u32], i64)]) -> ModuleElement<Rational> {
        ModuleElement::from_terms(l.clone(), terms.iter().map(|(e, c)| (term(e), integer(*c)))).unwrap()
    }

    #[test]
    fn zero_entries_are_dropped() {
        let l = layout(3);
        let e = elem(&l, &[(&[0, 1, 0], 0), (&[1, 0, 0], 1)]);
        assert_eq!(e, elem(&l, &[(&[1, 0, 0], 1)]));
    }

    #[test]
    fn cancellation_gives_zero() {
        let l = layout(3);
        let e = elem(&l, &[(&[0, 1, 0], 1), (&[0, 1, 0], -1)]);
        assert!(e.is_zero());
        assert_eq!(e.degree(), None);
    }

    #[test]
    fn heterogeneous_input_is_rejected() {
        let l = layout(3);
        let r = ModuleElement::from_terms(
            l,
            vec![(term(&[0, 0, 2]), integer(1)), (term(&[1, 0, 0]), integer(1))],
        );
        assert_eq!(r, Err(RingError::HeterogeneousElement { first: 2, other: 1 }));
    }

    #[test]
    fn mul_term_examples() {
        let l = layout(3);
        let x0 = ExponentVector::var(3, 0);
        let x2 = ExponentVector::var(3, 2);
        assert_eq!(elem(&l, &[(&[0, 1, 0], 1)]).mul_term(&x0), elem(&l, &[(&[1, 1, 0], 1)]));
        let g = elem(&l, &[(&[1, 1, 0], 1), (&[0, 0, 2], 1)]);
        assert_eq!(g.mul_term(&ExponentVector::one(3)), g);
        assert_eq!(g.mul_term(&x2), elem(&l, &[(&[1, 1, 1], 1), (&[0, 0, 3], 1)]));
        assert_eq!(g.mul_term(&x2).degree(), Some(3));
    }

    #[test]
    fn display_sorts_degrevlex_with_signs() {
        let l = layout(3);
        let g = elem(&l, &[(&[1, 1, 0], 1), (&[0, 0, 2], -2)]);
        assert_eq!(g.to_string(), "-2*x2^2 + x1*x0");
        let head = term(&[1, 1, 0]);
        let mut s = String::new();
        g.write_with_head(Some(&head), &mut s).unwrap();
        assert_eq!(s, "[x1*x0] - 2*x2^2");
    }

    fn arb_element() -> impl Strategy<Value = ModuleElement<Rational>> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..3), 0..6).prop_map(|v| {
            let l = layout(3);
            // degree 3 terms x0^a x1^b x2^(3-a-b)
            let terms = v.into_iter().filter(|(a, b, _)| a + b <= 3).map(|(a, b, c)| {
                (term(&[a, b, 3 - a - b]), integer(c))
            });
            ModuleElement::from_terms(l, terms).unwrap()
        })
    }

    fn arb_exponents() -> impl Strategy<Value = ExponentVector> {
        prop::collection::vec(0u32..3, 3).prop_map(ExponentVector::new)
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(e in arb_element()) {
            let once = e.canonicalize().unwrap();
            prop_assert_eq!(once.canonicalize().unwrap(), once.clone());
            prop_assert_eq!(once, e);
        }

        #[test]
        fn mul_term_composes(e in arb_element(), s in arb_exponents(), t in arb_exponents()) {
            prop_assert_eq!(e.mul_term(&t).mul_term(&s), e.mul_term(&(&s * &t)));
        }
    }
}
