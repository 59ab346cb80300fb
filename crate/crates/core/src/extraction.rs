//! From an extension and transversals of π and β to a 3-cocycle.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cochain::{Cochain, CochainError};
use crate::cover::{CoverElement, CoverExtension, NElement};
use crate::crossed::{Carrier, CrossedError, CrossedExtension, NElem, SElem};
use crate::tmodule::TModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("rho(x)rho(y) differs from f(x,y)rho(xy) at ({x}, {y})")]
    FactorSetViolation { x: String, y: String },
    #[error("the lift of f({x}, {y}) does not lie over it")]
    LiftViolation { x: String, y: String },
    #[error("the defect at ({x}, {y}, {z}) is not in the image of A")]
    ExactnessViolation { x: String, y: String, z: String },
    #[error("extracted cochain is not a 3-cocycle")]
    CocycleViolation,
    #[error("T is not an F-inverse monoid")]
    NotFInverse,
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// ρ: T → S as a table and σ: β(N) → N as a function.
pub struct Transversal<S, N> {
    pub rho: Vec<S>,
    pub sigma: Arc<dyn Fn(&S) -> N + Send + Sync>,
}

impl<S: Clone, N> Clone for Transversal<S, N> {
    fn clone(&self) -> Self {
        Self {
            rho: self.rho.clone(),
            sigma: self.sigma.clone(),
        }
    }
}

impl<S: fmt::Debug, N> fmt::Debug for Transversal<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Transversal")
            .field("rho", &self.rho)
            .finish_non_exhaustive()
    }
}

impl<S, N> Transversal<S, N> {
    pub fn new(rho: Vec<S>, sigma: impl Fn(&S) -> N + Send + Sync + 'static) -> Self {
        Self {
            rho,
            sigma: Arc::new(sigma),
        }
    }
}

fn names(t: &crate::semigroup::FiniteInverseSemigroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| t.name(x).to_string()).collect()
}

/// f(x, y) = ρ(x)ρ(y)ρ(xy)⁻¹, indexed by `x·|T| + y`.
pub fn derive_factor_set<X: CrossedExtension>(
    ext: &X,
    rho: &[SElem<X>],
) -> Result<Vec<SElem<X>>, ExtractionError> {
    let (s, t) = (ext.s_carrier(), ext.base());
    let mut out = Vec::with_capacity(t.len() * t.len());
    for x in t.elements() {
        for y in t.elements() {
            let xy = t.mul(x, y);
            let prod = s.mul(&rho[x], &rho[y]);
            let f = s.mul(&prod, &s.inv(&rho[xy]));
            if s.mul(&f, &rho[xy]) != prod || !t.is_idempotent(ext.project(&f)) {
                let n = names(t, &[x, y]);
                return Err(ExtractionError::FactorSetViolation {
                    x: n[0].clone(),
                    y: n[1].clone(),
                });
            }
            out.push(f);
        }
    }
    Ok(out)
}

/// F = σ∘f, checking β∘F = f.
pub fn lift_factor_set<X: CrossedExtension>(
    ext: &X,
    f: &[SElem<X>],
    sigma: &(dyn Fn(&SElem<X>) -> NElem<X> + Send + Sync),
) -> Result<Vec<NElem<X>>, ExtractionError> {
    let order = ext.base().len();
    f.iter()
        .enumerate()
        .map(|(i, v)| {
            let lifted = sigma(v);
            if ext.beta(&lifted) == *v {
                Ok(lifted)
            } else {
                let n = names(ext.base(), &[i / order, i % order]);
                Err(ExtractionError::LiftViolation {
                    x: n[0].clone(),
                    y: n[1].clone(),
                })
            }
        })
        .collect()
}

/// c with λ_{ρ(x)}(F(y,z))·F(x,yz) = i(c(x,y,z))·F(x,y)·F(xy,z), checked exactly,
/// followed by an exhaustive cocycle check.
pub fn extract_cocycle_from_factor_data<X: CrossedExtension>(
    ext: &X,
    module: &TModule,
    rho: &[SElem<X>],
    lifted: &[NElem<X>],
) -> Result<Cochain, ExtractionError> {
    let (n, t, a) = (ext.n_carrier(), module.base(), module.coefficients());
    let order = t.len();
    let at = |x: usize, y: usize| &lifted[x * order + y];
    let mut failure = None;
    let c = module.cochain_from_fn(3, |xyz| {
        let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
        let left = n.mul(&ext.act(&rho[x], at(y, z)), at(x, t.mul(y, z)));
        let right = n.mul(at(x, y), at(t.mul(x, y), z));
        let defect = n.mul(&left, &n.inv(&right));
        let value = ext
            .unembed(&defect)
            .map(|p| a.mul(module.target(xyz), p))
            .filter(|&p| n.mul(&ext.embed(p), &right) == left);
        match value {
            Some(p) => p,
            None => {
                failure.get_or_insert_with(|| names(t, xyz));
                module.target(xyz)
            }
        }
    })?;
    if let Some(w) = failure {
        return Err(ExtractionError::ExactnessViolation {
            x: w[0].clone(),
            y: w[1].clone(),
            z: w[2].clone(),
        });
    }
    if !module.is_cocycle(&c) {
        return Err(ExtractionError::CocycleViolation);
    }
    Ok(c)
}

pub fn extract_cocycle<X: CrossedExtension>(
    ext: &X,
    module: &TModule,
    tr: &Transversal<SElem<X>, NElem<X>>,
) -> Result<Cochain, ExtractionError> {
    if tr.rho.len() != ext.base().len()
        || ext.base().elements().any(|x| ext.project(&tr.rho[x]) != x)
    {
        return Err(CrossedError::NotTransversal(vec!["rho".into()]).into());
    }
    let f = derive_factor_set(ext, &tr.rho)?;
    let lifted = lift_factor_set(ext, &f, tr.sigma.as_ref())?;
    extract_cocycle_from_factor_data(ext, module, &tr.rho, &lifted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransversalKind {
    /// ρ(t) = (t, [t]).
    Plain,
    /// ρ(t) = (t, [max t]) off idempotents, (e, ε) on them.
    FInverse,
}

pub fn canonical_cover_transversals(
    ext: &CoverExtension,
    kind: TransversalKind,
) -> Result<Transversal<CoverElement, NElement>, ExtractionError> {
    let t = ext.base();
    let rho = match kind {
        TransversalKind::Plain => t.elements().map(CoverElement::canonical).collect(),
        TransversalKind::FInverse => {
            let max = t
                .f_inverse_max()
                .filter(|_| t.is_f_inverse_monoid())
                .ok_or(ExtractionError::NotFInverse)?;
            t.elements()
                .map(|x| {
                    if t.is_idempotent(x) {
                        CoverElement::idempotent(x)
                    } else {
                        CoverElement::new(t, x, CoverElement::canonical(max[x]).word().clone())
                            .expect("t ≤ max t")
                    }
                })
                .collect()
        }
    };
    let owner = ext.clone();
    Ok(Transversal::new(rho, move |s| owner.sigma(s)))
}

/// u with F′(x,y) = i(u(x,y))·F(x,y), so that c′ = c·δ²u.
pub fn lifting_change_witness<X: CrossedExtension>(
    ext: &X,
    module: &TModule,
    lifted: &[NElem<X>],
    relifted: &[NElem<X>],
) -> Result<Cochain, ExtractionError> {
    let (n, t, a) = (ext.n_carrier(), module.base(), module.coefficients());
    let order = t.len();
    let mut failure = None;
    let u = module.cochain_from_fn(2, |xy| {
        let i = xy[0] * order + xy[1];
        let q = n.mul(&relifted[i], &n.inv(&lifted[i]));
        match ext.unembed(&q) {
            Some(p) => a.mul(module.target(xy), p),
            None => {
                failure.get_or_insert_with(|| names(t, xy));
                module.target(xy)
            }
        }
    })?;
    match failure {
        Some(w) => Err(ExtractionError::ExactnessViolation {
            x: w[0].clone(),
            y: w[1].clone(),
            z: String::new(),
        }),
        None => Ok(u),
    }
}

/// w with F′(x,y)V(xy) = i(w(x,y))·λ_{ρ′(x)}(V(y))·V(x)·F(x,y), where
/// V = σ′(ρ′ρ⁻¹); the cocycle extracted through `other` is c·δ²w.
pub fn transversal_change_witness<X: CrossedExtension>(
    ext: &X,
    module: &TModule,
    tr: &Transversal<SElem<X>, NElem<X>>,
    other: &Transversal<SElem<X>, NElem<X>>,
) -> Result<Cochain, ExtractionError> {
    let (s, n, t, a) = (
        ext.s_carrier(),
        ext.n_carrier(),
        module.base(),
        module.coefficients(),
    );
    let order = t.len();
    let lifted = lift_factor_set(ext, &derive_factor_set(ext, &tr.rho)?, tr.sigma.as_ref())?;
    let relifted = lift_factor_set(
        ext,
        &derive_factor_set(ext, &other.rho)?,
        other.sigma.as_ref(),
    )?;
    let shift: Vec<NElem<X>> = t
        .elements()
        .map(|x| (other.sigma)(&s.mul(&other.rho[x], &s.inv(&tr.rho[x]))))
        .collect();
    let mut failure = None;
    let w = module.cochain_from_fn(2, |xy| {
        let (x, y) = (xy[0], xy[1]);
        let i = x * order + y;
        let left = n.mul(&relifted[i], &shift[t.mul(x, y)]);
        let right = n.mul(
            &n.mul(&ext.act(&other.rho[x], &shift[y]), &shift[x]),
            &lifted[i],
        );
        match ext.unembed(&n.mul(&left, &n.inv(&right))) {
            Some(p) => a.mul(module.target(xy), p),
            None => {
                failure.get_or_insert_with(|| names(t, xy));
                module.target(xy)
            }
        }
    })?;
    match failure {
        Some(v) => Err(ExtractionError::ExactnessViolation {
            x: v[0].clone(),
            y: v[1].clone(),
            z: String::new(),
        }),
        None => Ok(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{build_extension_from_cocycle, Mode};
    use crate::crossed::{
        check_admissible, CrossedModule, SamplerConfig, TableCrossedModule, TableExtension,
    };
    use crate::fixtures;
    use crate::tmodule::SemilatticeOfAbelianGroups;
    use crate::words::{Letter, ReducedWord};

    fn ggg(m: &TModule) -> Cochain {
        m.cochain_from_fn(3, |x| if x == [1, 1, 1] { 1 } else { 0 })
            .unwrap()
    }

    fn small() -> SamplerConfig {
        SamplerConfig {
            samples: 300,
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn plain_transversal_recovers_cocycle_on_z2() {
        let m = fixtures::z2_trivial_module();
        let c = ggg(&m);
        let ext = build_extension_from_cocycle(&m, &c, Mode::Checked).unwrap();
        let tr = canonical_cover_transversals(&ext, TransversalKind::Plain).unwrap();
        assert_eq!(extract_cocycle(&ext, &m, &tr).unwrap(), c);
        // f(g,g) = (1, [g][g][1]⁻¹)
        let f = derive_factor_set(&ext, &tr.rho).unwrap();
        let expected = ReducedWord::from_letters(&[Letter::pos(1), Letter::pos(1), Letter::neg(0)]);
        assert_eq!(f[3], CoverElement::new(m.base(), 0, expected).unwrap());
    }

    #[test]
    fn plain_transversal_is_not_admissible_on_chain() {
        let m = fixtures::chain2_module();
        let ext = build_extension_from_cocycle(&m, &m.trivial_cochain(3), Mode::Checked).unwrap();
        let tr = canonical_cover_transversals(&ext, TransversalKind::Plain).unwrap();
        let r = check_admissible(&ext, &tr, &small()).unwrap();
        assert!(r.violates("rho-order-preserving"));
        let tr = canonical_cover_transversals(&ext, TransversalKind::FInverse).unwrap();
        assert!(check_admissible(&ext, &tr, &small()).unwrap().is_ok());
        assert_eq!(tr.rho[1], CoverElement::idempotent(1));
    }

    #[test]
    fn f_inverse_transversal_on_clifford_fixture() {
        let m = fixtures::z2_chain2_module();
        let ext = build_extension_from_cocycle(&m, &m.trivial_cochain(3), Mode::Checked).unwrap();
        let tr = canonical_cover_transversals(&ext, TransversalKind::FInverse).unwrap();
        // ρ((g,f)) = ((g,f), [(g,e)])
        assert_eq!(
            tr.rho[3],
            CoverElement::new(m.base(), 3, ReducedWord::letter(Letter::pos(2))).unwrap()
        );
        let r = check_admissible(&ext, &tr, &small()).unwrap();
        assert!(r.is_ok(), "{:?}", r.violations);
        let c = extract_cocycle(&ext, &m, &tr).unwrap();
        assert!(m.is_strongly_normalized(&c));
        assert!(m.is_order_preserving(&c));
    }

    #[test]
    fn admissible_rho_need_not_commute_with_inversion() {
        let m = fixtures::z2_trivial_module();
        let ext = build_extension_from_cocycle(&m, &ggg(&m), Mode::Checked).unwrap();
        let tr = canonical_cover_transversals(&ext, TransversalKind::FInverse).unwrap();
        assert!(check_admissible(&ext, &tr, &small()).unwrap().is_ok());
        // g = g⁻¹ but (g, [g])⁻¹ = (g, [g]⁻¹)
        assert_ne!(tr.rho[1], ext.s_carrier().inv(&tr.rho[1]));
    }

    #[test]
    fn not_f_inverse_is_reported() {
        let m = fixtures::symmetric_inverse_monoid2_module();
        assert!(m.validate().is_ok());
        let ext = build_extension_from_cocycle(&m, &m.trivial_cochain(3), Mode::Fast).unwrap();
        assert_eq!(
            canonical_cover_transversals(&ext, TransversalKind::FInverse).unwrap_err(),
            ExtractionError::NotFInverse
        );
    }

    #[test]
    fn lifting_change_is_a_coboundary() {
        let m = fixtures::z2_trivial_module();
        let c = ggg(&m);
        let ext = build_extension_from_cocycle(&m, &c, Mode::Checked).unwrap();
        let tr = canonical_cover_transversals(&ext, TransversalKind::Plain).unwrap();
        let f = derive_factor_set(&ext, &tr.rho).unwrap();
        let lifted = lift_factor_set(&ext, &f, tr.sigma.as_ref()).unwrap();
        let u0 = m
            .cochain_from_fn(2, |x| if x == [1, 0] || x == [1, 1] { 1 } else { 0 })
            .unwrap();
        let relifted: Vec<NElement> = lifted
            .iter()
            .zip(u0.values())
            .map(|(l, &p)| ext.n_carrier().mul(&ext.embed(p), l))
            .collect();
        let u = lifting_change_witness(&ext, &m, &lifted, &relifted).unwrap();
        assert_eq!(u, u0);
        let c2 = extract_cocycle_from_factor_data(&ext, &m, &tr.rho, &relifted).unwrap();
        assert_eq!(c2, m.mul_cochains(&c, &m.coboundary(&u).unwrap()).unwrap());
    }

    #[test]
    fn transversal_change_is_a_coboundary() {
        let m = fixtures::z2_chain2_module();
        // a nontrivial strongly normalized cocycle supported on non-idempotent triples
        let ones = [2usize, 3];
        let c = m
            .cochain_from_fn(3, |x| {
                if x.iter().all(|v| ones.contains(v)) {
                    let p = m.base().product(x).unwrap();
                    m.coefficients().mul(m.theta_ran(p), 2)
                } else {
                    m.target(x)
                }
            })
            .unwrap();
        assert!(m.is_cocycle(&c) && m.is_strongly_normalized(&c) && m.is_order_preserving(&c));
        let ext = build_extension_from_cocycle(&m, &c, Mode::Checked).unwrap();
        let plain = canonical_cover_transversals(&ext, TransversalKind::Plain).unwrap();
        let fin = canonical_cover_transversals(&ext, TransversalKind::FInverse).unwrap();
        let c_plain = extract_cocycle(&ext, &m, &plain).unwrap();
        assert_eq!(c_plain, c);
        let c_fin = extract_cocycle(&ext, &m, &fin).unwrap();
        let w = transversal_change_witness(&ext, &m, &plain, &fin).unwrap();
        assert_eq!(
            c_fin,
            m.mul_cochains(&c_plain, &m.coboundary(&w).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn identity_extension_gives_trivial_cocycle() {
        let m = fixtures::chain2_module();
        let ext = TableExtension::identity(&m);
        let owner = m.clone();
        let tr = Transversal::new(m.base().elements().collect(), move |e: &usize| {
            owner.theta(*e)
        });
        assert!(check_admissible(&ext, &tr, &small()).unwrap().is_ok());
        assert!(m.is_trivial(&extract_cocycle(&ext, &m, &tr).unwrap()));
    }

    #[test]
    fn doubling_extension_of_z2() {
        // Z₂ → Z₄ →(×2) Z₄ → Z₂, trivial action; F vanishes except F(g,g) = 1
        let z4 = fixtures::cyclic(4);
        let z2 = fixtures::cyclic(2);
        let cm = TableCrossedModule::new(
            z4.clone(),
            z4,
            vec![Some(0), None, None, None],
            vec![0, 2, 0, 2],
            vec![(0..4).collect(); 4],
        )
        .unwrap();
        let a = SemilatticeOfAbelianGroups::new(z2.clone()).unwrap();
        let ext =
            TableExtension::new(cm, z2.clone(), a.clone(), vec![0, 2], vec![0, 1, 0, 1]).unwrap();
        let m = TModule::new(z2, a, vec![Some(0), None], vec![vec![0, 1], vec![0, 1]]).unwrap();
        let tr = Transversal::new(vec![0, 1], |s: &usize| s / 2);
        let f = derive_factor_set(&ext, &tr.rho).unwrap();
        assert_eq!(f, vec![0, 0, 0, 2]);
        let c = extract_cocycle(&ext, &m, &tr).unwrap();
        assert!(m.is_trivial(&c));
    }

    #[test]
    fn broken_section_is_rejected() {
        let m = fixtures::z2_trivial_module();
        let ext = build_extension_from_cocycle(&m, &ggg(&m), Mode::Checked).unwrap();
        let tr = canonical_cover_transversals(&ext, TransversalKind::Plain).unwrap();
        let owner = ext.clone();
        let bad = Transversal::new(tr.rho.clone(), move |s: &CoverElement| {
            owner.embed(1).clone().max(owner.sigma(s))
        });
        assert!(matches!(
            extract_cocycle(&ext, &m, &bad),
            Err(ExtractionError::LiftViolation { .. })
        ));
    }
}
