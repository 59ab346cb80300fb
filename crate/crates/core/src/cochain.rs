//! Cochains `Cⁿ(T¹, A¹)`, the coboundary, order preservation and the
//! normalization of order-preserving 3-cocycles.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::tmodule::TModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("cochain has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("entry at ({}) lies outside its component", .0.join(","))]
    OutsideComponent(Vec<String>),
    #[error("not an order-preserving 3-cocycle")]
    NotOrderPreservingCocycle,
    #[error("coboundary of the witness differs from the cochain")]
    WitnessMismatch,
    #[error("cochain is not normalized")]
    NotNormalized,
    #[error("witness is not order-preserving")]
    WitnessNotOrderPreserving,
    #[error("enumeration needs {size} cochains, budget is {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
}

/// A map `Tⁿ → A`, stored densely with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    degree: usize,
    order: usize,
    values: Vec<usize>,
}

/// Mixed-radix helpers over tuples in `Tⁿ`.
pub fn tuple_count(order: usize, n: usize) -> usize {
    order.pow(n as u32)
}

pub fn decode_tuple(order: usize, n: usize, mut index: usize, out: &mut [usize]) {
    for slot in (0..n).rev() {
        out[slot] = index % order;
        index /= order;
    }
}

pub fn encode_tuple(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

impl Cochain {
    pub fn from_values(
        degree: usize,
        order: usize,
        values: Vec<usize>,
    ) -> Result<Self, CochainError> {
        if degree == 0 {
            return Err(CochainError::DegreeOutOfRange(0));
        }
        let expected = tuple_count(order, degree);
        if values.len() != expected {
            return Err(CochainError::Shape {
                expected,
                got: values.len(),
            });
        }
        Ok(Self {
            degree,
            order,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn get(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        self.values[encode_tuple(self.order, tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], value: usize) {
        let i = encode_tuple(self.order, tuple);
        self.values[i] = value;
    }

    /// Every tuple in `Tⁿ` in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let (order, n) = (self.order, self.degree);
        (0..self.values.len()).map(move |i| {
            let mut t = vec![0; n];
            decode_tuple(order, n, i, &mut t);
            t
        })
    }
}

/// Calls `f` on every element of the cartesian product of `lists` in
/// lexicographic order, stopping early (and returning false) once `f` does.
pub fn all_products(lists: &[&[usize]], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if lists.iter().any(|l| l.is_empty()) {
        return true;
    }
    let n = lists.len();
    let mut pos = vec![0; n];
    let mut cur: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    loop {
        if !f(&cur) {
            return false;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < lists[i].len() {
                cur[i] = lists[i][pos[i]];
                break;
            }
            pos[i] = 0;
            cur[i] = lists[i][0];
        }
    }
}

impl TModule {
    /// θ(r(s₁⋯sₙ)), the component identity a cochain must land in.
    pub fn target(&self, tuple: &[usize]) -> usize {
        let p = self.base().product(tuple).expect("nonempty tuple");
        self.theta_ran(p)
    }

    fn render_tuple(&self, tuple: &[usize]) -> Vec<String> {
        tuple
            .iter()
            .map(|&s| self.base().name(s).to_string())
            .collect()
    }

    pub fn trivial_cochain(&self, n: usize) -> Cochain {
        self.cochain_from_fn(n, |tuple| self.target(tuple))
            .expect("trivial cochain lands in its components")
    }

    pub fn cochain_from_fn(
        &self,
        n: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Result<Cochain, CochainError> {
        if n == 0 {
            return Err(CochainError::DegreeOutOfRange(0));
        }
        let order = self.base().len();
        let mut tuple = vec![0; n];
        let values = (0..tuple_count(order, n))
            .map(|i| {
                decode_tuple(order, n, i, &mut tuple);
                f(&tuple)
            })
            .collect();
        let c = Cochain::from_values(n, order, values)?;
        self.check_cochain(&c)?;
        Ok(c)
    }

    /// Component constraint f(s₁,…,sₙ) ∈ A_{θ(r(s₁⋯sₙ))}.
    pub fn check_cochain(&self, c: &Cochain) -> Result<(), CochainError> {
        let a = self.coefficients();
        if c.order != self.base().len() {
            return Err(CochainError::Shape {
                expected: tuple_count(self.base().len(), c.degree),
                got: c.values.len(),
            });
        }
        for tuple in c.tuples() {
            let v = c.get(&tuple);
            if v >= a.len() || a.component_of(v) != self.target(&tuple) {
                return Err(CochainError::OutsideComponent(self.render_tuple(&tuple)));
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self, c: &Cochain) -> bool {
        c.tuples().all(|tuple| c.get(&tuple) == self.target(&tuple))
    }

    pub fn mul_cochains(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, CochainError> {
        if f.degree != g.degree {
            return Err(CochainError::DegreeMismatch {
                expected: f.degree,
                got: g.degree,
            });
        }
        let a = self.coefficients();
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(&x, &y)| a.mul(x, y))
            .collect();
        Cochain::from_values(f.degree, f.order, values)
    }

    pub fn inv_cochain(&self, f: &Cochain) -> Cochain {
        let a = self.coefficients();
        Cochain {
            degree: f.degree,
            order: f.order,
            values: f.values.iter().map(|&x| a.inv(x)).collect(),
        }
    }

    /// (δⁿf)(s₁,…,sₙ₊₁) = η_{s₁}(f(s₂,…)) · ∏ᵢ f(…, sᵢsᵢ₊₁, …)^{(-1)^i} · f(s₁,…,sₙ)^{(-1)^{n+1}}.
    pub fn coboundary(&self, f: &Cochain) -> Result<Cochain, CochainError> {
        let n = f.degree;
        if n == 0 {
            return Err(CochainError::DegreeOutOfRange(0));
        }
        let (t, a) = (self.base(), self.coefficients());
        let signed = |x: usize, negative: bool| if negative { a.inv(x) } else { x };
        let order = t.len();
        let mut s = vec![0; n + 1];
        let mut args = vec![0; n];
        let values = (0..tuple_count(order, n + 1))
            .map(|idx| {
                decode_tuple(order, n + 1, idx, &mut s);
                let mut acc = self.eta(s[0], f.get(&s[1..]));
                for i in 1..=n {
                    args[..i - 1].copy_from_slice(&s[..i - 1]);
                    args[i - 1] = t.mul(s[i - 1], s[i]);
                    args[i..].copy_from_slice(&s[i + 1..]);
                    acc = a.mul(acc, signed(f.get(&args), i % 2 == 1));
                }
                a.mul(acc, signed(f.get(&s[..n]), (n + 1) % 2 == 1))
            })
            .collect();
        Cochain::from_values(n + 1, order, values)
    }

    pub fn is_cocycle(&self, f: &Cochain) -> bool {
        self.coboundary(f).is_ok_and(|d| self.is_trivial(&d))
    }

    /// Monotonicity in every argument, checked over all comparable pairs of tuples.
    pub fn is_order_preserving(&self, f: &Cochain) -> bool {
        let (t, a) = (self.base(), self.coefficients());
        let downs: Vec<Vec<usize>> = t.elements().map(|x| t.down_set(x)).collect();
        f.tuples().all(|upper| {
            let top = f.get(&upper);
            let lists: Vec<&[usize]> = upper.iter().map(|&x| downs[x].as_slice()).collect();
            all_products(&lists, |lower| a.leq(f.get(lower), top))
        })
    }

    /// f(x₁,…,e·xᵢ,…,xₙ) = θ(r(x₁⋯xᵢ₋₁e))·f(x₁,…,xₙ) for every i and idempotent e.
    pub fn is_order_preserving_by_shift(&self, f: &Cochain) -> bool {
        let (t, a) = (self.base(), self.coefficients());
        let n = f.degree;
        f.tuples().all(|x| {
            (0..n).all(|i| {
                t.idempotents().iter().all(|&e| {
                    let mut shifted = x.clone();
                    shifted[i] = t.mul(e, x[i]);
                    let mut prefix = x[..i].to_vec();
                    prefix.push(e);
                    let scale = self.target(&prefix);
                    f.get(&shifted) == a.mul(scale, f.get(&x))
                })
            })
        })
    }

    fn all_tuples(&self, n: usize) -> impl Iterator<Item = Vec<usize>> {
        let order = self.base().len();
        (0..tuple_count(order, n)).map(move |i| {
            let mut t = vec![0; n];
            decode_tuple(order, n, i, &mut t);
            t
        })
    }

    /// The three idempotent patterns defining a normalized cochain.
    pub fn is_normalized(&self, c: &Cochain) -> bool {
        let t = self.base();
        let n = c.degree;
        if n == 1 {
            return t
                .idempotents()
                .iter()
                .all(|&e| c.get(&[e]) == self.theta(e));
        }
        for &e in t.idempotents() {
            for x in self.all_tuples(n - 1) {
                // c(e, e x₁, x₂, …, xₙ₋₁)
                let mut args = vec![e, t.mul(e, x[0])];
                args.extend_from_slice(&x[1..]);
                let mut prod = vec![e];
                prod.extend_from_slice(&x);
                if c.get(&args) != self.target(&prod) {
                    return false;
                }
                // c(x₁, …, xₙ₋₂, xₙ₋₁ e, e)
                let mut args = x[..n - 2].to_vec();
                args.push(t.mul(x[n - 2], e));
                args.push(e);
                let mut prod = x.clone();
                prod.push(e);
                if c.get(&args) != self.target(&prod) {
                    return false;
                }
                // c(…, xᵢ₋₁ e, e, e xᵢ₊₁, …) for 2 ≤ i ≤ n-1, with x listing the other arguments
                for i in 2..n {
                    let mut args = x[..i - 2].to_vec();
                    args.push(t.mul(x[i - 2], e));
                    args.push(e);
                    args.push(t.mul(e, x[i - 1]));
                    args.extend_from_slice(&x[i..]);
                    let mut prod = x[..i - 1].to_vec();
                    prod.push(e);
                    prod.extend_from_slice(&x[i - 1..]);
                    if c.get(&args) != self.target(&prod) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Trivial whenever some argument is idempotent.
    pub fn is_strongly_normalized(&self, c: &Cochain) -> bool {
        let t = self.base();
        c.tuples()
            .all(|x| !x.iter().any(|&s| t.is_idempotent(s)) || c.get(&x) == self.target(&x))
    }

    /// For order-preserving 3-cocycles: normalized iff c(t,e,e) = θ(tet⁻¹)
    /// and c(e,e,t) = θ(ett⁻¹).
    pub fn is_normalized_reduced(&self, c: &Cochain) -> bool {
        let t = self.base();
        assert_eq!(c.degree, 3);
        t.elements().all(|s| {
            t.idempotents().iter().all(|&e| {
                let conj = t.mul(t.mul(s, e), t.inv(s));
                c.get(&[s, e, e]) == self.theta(conj)
                    && c.get(&[e, e, s]) == self.theta(t.mul(e, t.ran(s)))
            })
        })
    }

    /// c̃ = c·δ²d with d(x,y) = c(xx⁻¹,x,y)⁻¹ c(x,y,y⁻¹y). Returns (c̃, d).
    pub fn normalize_cocycle(&self, c: &Cochain) -> Result<(Cochain, Cochain), CochainError> {
        if c.degree != 3 || !self.is_cocycle(c) || !self.is_order_preserving(c) {
            return Err(CochainError::NotOrderPreservingCocycle);
        }
        let (t, a) = (self.base(), self.coefficients());
        let d = self.cochain_from_fn(2, |xy| {
            let (x, y) = (xy[0], xy[1]);
            a.mul(a.inv(c.get(&[t.ran(x), x, y])), c.get(&[x, y, t.dom(y)]))
        })?;
        let normalized = self.mul_cochains(c, &self.coboundary(&d)?)?;
        Ok((normalized, d))
    }

    /// d̃ = d·δ¹u with u(t) = d(t,t⁻¹)⁻¹; requires δ²d = c.
    pub fn strongly_normalize_witness(
        &self,
        c: &Cochain,
        d: &Cochain,
    ) -> Result<Cochain, CochainError> {
        if d.degree != 2 || self.coboundary(d)? != *c {
            return Err(CochainError::WitnessMismatch);
        }
        if !self.is_normalized(c) {
            return Err(CochainError::NotNormalized);
        }
        if !self.is_order_preserving(d) {
            return Err(CochainError::WitnessNotOrderPreserving);
        }
        let (t, a) = (self.base(), self.coefficients());
        let u = self.cochain_from_fn(1, |s| a.inv(d.get(&[s[0], t.inv(s[0])])))?;
        self.mul_cochains(d, &self.coboundary(&u)?)
    }

    /// Entries that differ from the component identity, keyed by `"s1,s2,…"`.
    pub fn render_cochain(&self, c: &Cochain) -> BTreeMap<String, String> {
        let a = self.coefficients();
        c.tuples()
            .filter(|x| c.get(x) != self.target(x))
            .map(|x| {
                (
                    self.render_tuple(&x).join(","),
                    a.name(c.get(&x)).to_string(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    /// c(g,g,g) = a, everything else trivial.
    fn ggg(m: &TModule) -> Cochain {
        m.cochain_from_fn(3, |x| if x == [1, 1, 1] { 1 } else { 0 })
            .unwrap()
    }

    #[test]
    fn coboundary_of_trivial_is_trivial() {
        let m = fixtures::chain2_module();
        for n in 1..=3 {
            let d = m.coboundary(&m.trivial_cochain(n)).unwrap();
            assert!(m.is_trivial(&d));
        }
    }

    #[test]
    fn z2_coboundary_matches_mod_two_formula() {
        let m = fixtures::z2_trivial_module();
        let d = m
            .cochain_from_fn(2, |x| if x == [1, 1] { 1 } else { 0 })
            .unwrap();
        let dd = m.coboundary(&d).unwrap();
        // independent oracle: residues mod 2, trivial action, signs irrelevant
        let dv = |x: usize, y: usize| (x == 1 && y == 1) as usize;
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let expect =
                        (dv(y, z) + dv((x + y) % 2, z) + dv(x, (y + z) % 2) + dv(x, y)) % 2;
                    assert_eq!(dd.get(&[x, y, z]), expect, "({x},{y},{z})");
                }
            }
        }
    }

    #[test]
    fn chain_order_preserving_example() {
        let m = fixtures::chain2_module();
        // u(e) = a, u(f) = 1_f
        let u = m
            .cochain_from_fn(1, |x| if x == [0] { 1 } else { 2 })
            .unwrap();
        assert_eq!(m.coefficients().mul(1, 2), 2);
        assert!(m.is_order_preserving(&u));
        assert!(m.is_order_preserving_by_shift(&u));
    }

    #[test]
    fn outside_component_is_rejected() {
        let m = fixtures::chain2_module();
        let err = m.cochain_from_fn(1, |_| 1).unwrap_err();
        assert_eq!(err, CochainError::OutsideComponent(vec!["f".into()]));
    }

    #[test]
    fn ggg_is_strongly_normalized_cocycle() {
        let m = fixtures::z2_trivial_module();
        let c = ggg(&m);
        assert!(m.is_cocycle(&c));
        assert!(m.is_normalized(&c));
        assert!(m.is_strongly_normalized(&c));
        assert!(m.is_normalized_reduced(&c));
        let (n, d) = m.normalize_cocycle(&c).unwrap();
        assert_eq!(n, c);
        assert!(m.is_trivial(&d));
    }

    #[test]
    fn strongly_normalize_z2_witness() {
        let m = fixtures::z2_trivial_module();
        let d = m
            .cochain_from_fn(2, |x| if x == [1, 1] { 1 } else { 0 })
            .unwrap();
        let c = m.coboundary(&d).unwrap();
        let dt = m.strongly_normalize_witness(&c, &d).unwrap();
        assert_eq!(m.coboundary(&dt).unwrap(), c);
        assert!(m.is_strongly_normalized(&dt));
        assert_eq!(dt.get(&[0, 1]), 0);
        assert_eq!(dt.get(&[1, 0]), 0);
        assert!(matches!(
            m.strongly_normalize_witness(&ggg(&m), &d),
            Err(CochainError::WitnessMismatch)
        ));
    }

    #[test]
    fn normalization_rejects_non_cocycle() {
        let m = fixtures::z2_trivial_module();
        let c = m
            .cochain_from_fn(3, |x| if x == [0, 1, 1] { 1 } else { 0 })
            .unwrap();
        assert!(!m.is_cocycle(&c));
        assert_eq!(
            m.normalize_cocycle(&c).unwrap_err(),
            CochainError::NotOrderPreservingCocycle
        );
    }

    fn random_cochain(m: &TModule, n: usize, seed: &[usize]) -> Cochain {
        let a = m.coefficients();
        let mut i = 0;
        m.cochain_from_fn(n, |x| {
            let comp = a.component(m.target(x));
            i += 1;
            comp[seed[(i - 1) % seed.len()] % comp.len()]
        })
        .unwrap()
    }

    proptest! {
        #[test]
        fn complex_property_sampled(seed in prop::collection::vec(0usize..8, 1..40), n in 1usize..=3) {
            for m in [fixtures::z2_chain2_module(), fixtures::chain2_module()] {
                let f = random_cochain(&m, n, &seed);
                let d = m.coboundary(&f).unwrap();
                m.check_cochain(&d).unwrap();
                prop_assert!(m.is_trivial(&m.coboundary(&d).unwrap()));
            }
        }

        #[test]
        fn cochains_form_a_group(seed in prop::collection::vec(0usize..8, 1..40)) {
            let m = fixtures::z2_chain2_module();
            let f = random_cochain(&m, 2, &seed);
            let g = random_cochain(&m, 2, &seed[1..].iter().chain(&[3]).copied().collect::<Vec<_>>());
            let fg = m.mul_cochains(&f, &g).unwrap();
            m.check_cochain(&fg).unwrap();
            let inv = m.inv_cochain(&f);
            m.check_cochain(&inv).unwrap();
            prop_assert!(m.is_trivial(&m.mul_cochains(&f, &inv).unwrap()));
            // δ is a homomorphism
            prop_assert_eq!(
                m.coboundary(&fg).unwrap(),
                m.mul_cochains(&m.coboundary(&f).unwrap(), &m.coboundary(&g).unwrap()).unwrap()
            );
        }

        #[test]
        fn order_preserving_checks_agree(seed in prop::collection::vec(0usize..8, 1..40), n in 1usize..=2) {
            let m = fixtures::z2_chain2_module();
            let f = random_cochain(&m, n, &seed);
            prop_assert_eq!(m.is_order_preserving(&f), m.is_order_preserving_by_shift(&f));
        }
    }
}
