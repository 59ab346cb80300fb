//! Crossed modules, crossed module extensions and their axiom checkers.
//!
//! Finite tables and the symbolic cover share one interface, [`Carrier`];
//! checkers enumerate finite carriers and sample infinite ones.

use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::extraction::Transversal;
use crate::report::Report;
use crate::semigroup::{FiniteInverseSemigroup, GroupKernelNormalSystem};
use crate::tmodule::{ModuleError, SemilatticeOfAbelianGroups, TModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("no preimage of {0} under the projection was found")]
    PreimageUnavailable(String),
    #[error("induced action of {t} on {a} depends on the chosen preimage")]
    InducedActionDepends { t: String, a: String },
    #[error("alpha of the idempotent over {0} is not in the image of A")]
    IdempotentNotInImage(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("not a transversal at {0:?}")]
    NotTransversal(Vec<String>),
}

/// Seeded sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub max_word_len: usize,
    pub samples: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_word_len: 3,
            samples: 10_000,
        }
    }
}

impl SamplerConfig {
    /// Independent deterministic stream for one check family.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// An inverse semigroup that can be multiplied in, and either enumerated or sampled.
pub trait Carrier {
    type Elem: Clone + Eq + Hash + Debug;

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn contains(&self, x: &Self::Elem) -> bool;
    /// All elements, when finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn sample(&self, rng: &mut ChaCha8Rng, max_word_len: usize) -> Self::Elem;
    fn render(&self, x: &Self::Elem) -> String;

    fn is_idempotent(&self, x: &Self::Elem) -> bool {
        self.mul(x, x) == *x
    }

    /// Natural order: x ≤ y iff x = xx⁻¹y.
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.mul(&self.mul(x, &self.inv(x)), y) == *x
    }
}

impl Carrier for FiniteInverseSemigroup {
    type Elem = usize;

    fn mul(&self, x: &usize, y: &usize) -> usize {
        FiniteInverseSemigroup::mul(self, *x, *y)
    }

    fn inv(&self, x: &usize) -> usize {
        FiniteInverseSemigroup::inv(self, *x)
    }

    fn contains(&self, x: &usize) -> bool {
        *x < self.len()
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some(FiniteInverseSemigroup::elements(self).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng, _max_word_len: usize) -> usize {
        rng.gen_range(0..self.len())
    }

    fn render(&self, x: &usize) -> String {
        self.name(*x).to_string()
    }

    fn is_idempotent(&self, x: &usize) -> bool {
        FiniteInverseSemigroup::is_idempotent(self, *x)
    }

    fn leq(&self, x: &usize, y: &usize) -> bool {
        FiniteInverseSemigroup::leq(self, *x, *y)
    }
}

/// Every element when the carrier is finite and small enough, else `samples` draws.
pub fn draw<C: Carrier>(c: &C, cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<C::Elem> {
    match c.elements() {
        Some(all) if all.len() <= cfg.samples => all,
        _ => (0..cfg.samples)
            .map(|_| c.sample(rng, cfg.max_word_len))
            .collect(),
    }
}

pub fn draw_pairs<A: Carrier, B: Carrier>(
    a: &A,
    b: &B,
    cfg: &SamplerConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<(A::Elem, B::Elem)> {
    if let (Some(xs), Some(ys)) = (a.elements(), b.elements()) {
        if xs.len() * ys.len() <= cfg.samples {
            return xs
                .iter()
                .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
                .collect();
        }
    }
    (0..cfg.samples)
        .map(|_| {
            let x = a.sample(rng, cfg.max_word_len);
            (x, b.sample(rng, cfg.max_word_len))
        })
        .collect()
}

pub fn draw_triples<A: Carrier, B: Carrier, C: Carrier>(
    a: &A,
    b: &B,
    c: &C,
    cfg: &SamplerConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<(A::Elem, B::Elem, C::Elem)> {
    if let (Some(xs), Some(ys), Some(zs)) = (a.elements(), b.elements(), c.elements()) {
        if xs.len() * ys.len() * zs.len() <= cfg.samples {
            let mut out = Vec::new();
            for x in &xs {
                for y in &ys {
                    for z in &zs {
                        out.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
            return out;
        }
    }
    (0..cfg.samples)
        .map(|_| {
            let x = a.sample(rng, cfg.max_word_len);
            let y = b.sample(rng, cfg.max_word_len);
            (x, y, c.sample(rng, cfg.max_word_len))
        })
        .collect()
}

/// A crossed S-module `(N, α, λ, β)`.
pub trait CrossedModule {
    type S: Carrier;
    type N: Carrier;

    fn s_carrier(&self) -> &Self::S;
    fn n_carrier(&self) -> &Self::N;
    /// Isomorphism E(S) → E(N).
    fn alpha(&self, e: &SElem<Self>) -> NElem<Self>;
    fn beta(&self, n: &NElem<Self>) -> SElem<Self>;
    /// λ_s(n).
    fn act(&self, s: &SElem<Self>, n: &NElem<Self>) -> NElem<Self>;
}

pub type SElem<X> = <<X as CrossedModule>::S as Carrier>::Elem;
pub type NElem<X> = <<X as CrossedModule>::N as Carrier>::Elem;

/// A crossed module extension `A → N → S → T`.
pub trait CrossedExtension: CrossedModule {
    fn base(&self) -> &FiniteInverseSemigroup;
    fn coefficients(&self) -> &SemilatticeOfAbelianGroups;
    /// i: A → N.
    fn embed(&self, a: usize) -> NElem<Self>;
    /// i⁻¹, defined on i(A).
    fn unembed(&self, n: &NElem<Self>) -> Option<usize>;
    /// π: S → T.
    fn project(&self, s: &SElem<Self>) -> usize;
    /// The idempotent of S over the idempotent `e` of T.
    fn idempotent_lift(&self, e: usize) -> Option<SElem<Self>>;
    /// Some `n` with β(n) = s, when `s ∈ β(N)`.
    fn beta_preimage(&self, s: &SElem<Self>) -> Option<NElem<Self>>;
    /// Some (for finite S: all) elements of S over `t`.
    fn preimages(&self, t: usize, cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<SElem<Self>>;
}

fn idempotents_of<C: Carrier>(c: &C, xs: &[C::Elem]) -> Vec<C::Elem> {
    xs.iter().map(|x| c.mul(&c.inv(x), x)).collect()
}

/// CM1–CM4, the α/β compatibilities, and homomorphism properties of β and λ.
pub fn check_crossed_module<X: CrossedModule>(x: &X, cfg: &SamplerConfig) -> Report {
    let (s, n) = (x.s_carrier(), x.n_carrier());
    let rs = |v: &SElem<X>| s.render(v);
    let rn = |v: &NElem<X>| n.render(v);
    let mut report = Report::new();

    let mut rng = cfg.rng(1);
    for (u, m) in draw_pairs(s, n, cfg, &mut rng) {
        let e = s.mul(&s.inv(&u), &u);
        report.check("CM1", x.act(&e, &m) == n.mul(&x.alpha(&e), &m), || {
            vec![rs(&e), rn(&m)]
        });
        let f = s.mul(&u, &s.inv(&u));
        let conj = s.mul(&s.mul(&u, &e), &s.inv(&u));
        report.check("CM2", x.act(&u, &x.alpha(&e)) == x.alpha(&conj), || {
            vec![rs(&u), rs(&e)]
        });
        report.check(
            "CM4",
            x.beta(&x.act(&u, &m)) == s.mul(&s.mul(&u, &x.beta(&m)), &s.inv(&u)),
            || vec![rs(&u), rn(&m)],
        );
        report.check(
            "lambda-relatively-invertible",
            x.act(&s.inv(&u), &x.act(&u, &m)) == n.mul(&x.alpha(&e), &m)
                && x.act(&u, &x.act(&s.inv(&u), &m)) == n.mul(&x.alpha(&f), &m),
            || vec![rs(&u), rn(&m)],
        );
        report.check("lambda-closed", n.contains(&x.act(&u, &m)), || {
            vec![rs(&u), rn(&m)]
        });
    }

    let mut rng = cfg.rng(2);
    for (m, m2) in draw_pairs(n, n, cfg, &mut rng) {
        let conj = n.mul(&n.mul(&m, &m2), &n.inv(&m));
        report.check("CM3", x.act(&x.beta(&m), &m2) == conj, || {
            vec![rn(&m), rn(&m2)]
        });
        report.check(
            "beta-homomorphism",
            x.beta(&n.mul(&m, &m2)) == s.mul(&x.beta(&m), &x.beta(&m2)),
            || vec![rn(&m), rn(&m2)],
        );
        if s.is_idempotent(&x.beta(&m)) {
            report.check("kernel-central", n.mul(&m, &m2) == n.mul(&m2, &m), || {
                vec![rn(&m), rn(&m2)]
            });
        }
    }

    let mut rng = cfg.rng(3);
    for (u, v, m) in draw_triples(s, s, n, cfg, &mut rng) {
        report.check(
            "lambda-homomorphism",
            x.act(&s.mul(&u, &v), &m) == x.act(&u, &x.act(&v, &m)),
            || vec![rs(&u), rs(&v), rn(&m)],
        );
    }
    let mut rng = cfg.rng(4);
    for (u, m, m2) in draw_triples(s, n, n, cfg, &mut rng) {
        report.check(
            "lambda-endomorphism",
            x.act(&u, &n.mul(&m, &m2)) == n.mul(&x.act(&u, &m), &x.act(&u, &m2)),
            || vec![rs(&u), rn(&m), rn(&m2)],
        );
    }

    let mut rng = cfg.rng(5);
    let es = idempotents_of(s, &draw(s, cfg, &mut rng));
    for e in &es {
        let a = x.alpha(e);
        report.check(
            "alpha-idempotent",
            n.is_idempotent(&a) && x.beta(&a) == *e,
            || vec![rs(e)],
        );
    }
    let ns = idempotents_of(n, &draw(n, cfg, &mut rng));
    for m in &ns {
        report.check("beta-alpha-inverse", x.alpha(&x.beta(m)) == *m, || {
            vec![rn(m)]
        });
    }
    report
}

/// CME1–CME3 plus the crossed module axioms.
pub fn check_extension<X: CrossedExtension>(x: &X, cfg: &SamplerConfig) -> Report {
    let (s, n, t, a) = (x.s_carrier(), x.n_carrier(), x.base(), x.coefficients());
    let rs = |v: &SElem<X>| s.render(v);
    let rn = |v: &NElem<X>| n.render(v);
    let ra = |v: usize| a.name(v).to_string();
    let mut report = check_crossed_module(x, cfg);

    for p in a.elements() {
        let ip = x.embed(p);
        report.check("CME2-embedding-defined", n.contains(&ip), || vec![ra(p)]);
        report.check(
            "CME2-embedding-left-inverse",
            x.unembed(&ip) == Some(p),
            || vec![ra(p)],
        );
        report.check(
            "CME3-embedding-into-kernel",
            s.is_idempotent(&x.beta(&ip)),
            || vec![ra(p)],
        );
        for q in a.elements() {
            let iq = x.embed(q);
            report.check(
                "CME2-embedding-homomorphism",
                x.embed(a.mul(p, q)) == n.mul(&ip, &iq),
                || vec![ra(p), ra(q)],
            );
            if p < q {
                report.check("CME2-embedding-injective", ip != iq, || vec![ra(p), ra(q)]);
            }
        }
    }

    let mut rng = cfg.rng(11);
    for (u, v) in draw_pairs(s, s, cfg, &mut rng) {
        report.check(
            "CME2-projection-homomorphism",
            x.project(&s.mul(&u, &v)) == t.mul(x.project(&u), x.project(&v)),
            || vec![rs(&u), rs(&v)],
        );
    }

    let mut rng = cfg.rng(12);
    let mut es = idempotents_of(s, &draw(s, cfg, &mut rng));
    for &e in t.idempotents() {
        match x.idempotent_lift(e) {
            Some(l) => {
                report.check(
                    "CME2-idempotent-lift",
                    s.is_idempotent(&l) && x.project(&l) == e,
                    || vec![t.name(e).to_string()],
                );
                es.push(l);
            }
            None => report.fail("CME2-idempotent-lift", vec![t.name(e).to_string()]),
        }
    }
    for e in &es {
        let over = x.project(e);
        report.check(
            "CME2-idempotent-separating",
            x.idempotent_lift(over).as_ref() == Some(e),
            || vec![rs(e)],
        );
    }

    let mut rng = cfg.rng(13);
    for u in t.elements() {
        let pre = x.preimages(u, cfg, &mut rng);
        report.check(
            "CME2-projection-surjective",
            !pre.is_empty() && pre.iter().all(|p| x.project(p) == u),
            || vec![t.name(u).to_string()],
        );
    }

    let mut rng = cfg.rng(14);
    for m in draw(n, cfg, &mut rng) {
        let b = x.beta(&m);
        report.check(
            "CME3-image-over-idempotent",
            t.is_idempotent(x.project(&b)),
            || vec![rn(&m)],
        );
        if s.is_idempotent(&b) {
            report.check(
                "CME3-kernel-is-image",
                x.unembed(&m).map(|p| x.embed(p)) == Some(m.clone()),
                || vec![rn(&m)],
            );
        }
    }
    let mut rng = cfg.rng(15);
    for u in draw(s, cfg, &mut rng) {
        if t.is_idempotent(x.project(&u)) {
            report.check(
                "CME3-fibre-is-image",
                x.beta_preimage(&u).map(|m| x.beta(&m)) == Some(u.clone()),
                || vec![rs(&u)],
            );
        }
    }
    report
}

/// θ = i⁻¹∘α∘(π|E(S))⁻¹ and η_t = i⁻¹∘λ_s∘i for preimages s of t.
pub fn induced_tmodule<X: CrossedExtension>(
    x: &X,
    cfg: &SamplerConfig,
) -> Result<TModule, CrossedError> {
    let (t, a) = (x.base(), x.coefficients());
    let mut theta = vec![None; t.len()];
    for &e in t.idempotents() {
        let lift = x
            .idempotent_lift(e)
            .ok_or_else(|| CrossedError::PreimageUnavailable(t.name(e).to_string()))?;
        let v = x
            .unembed(&x.alpha(&lift))
            .ok_or_else(|| CrossedError::IdempotentNotInImage(t.name(e).to_string()))?;
        theta[e] = Some(v);
    }
    let mut rng = cfg.rng(21);
    let mut eta = Vec::with_capacity(t.len());
    for u in t.elements() {
        let pre = x.preimages(u, cfg, &mut rng);
        let (first, rest) = pre
            .split_first()
            .ok_or_else(|| CrossedError::PreimageUnavailable(t.name(u).to_string()))?;
        let row: Vec<usize> = a
            .elements()
            .map(|p| {
                x.unembed(&x.act(first, &x.embed(p))).ok_or_else(|| {
                    CrossedError::InducedActionDepends {
                        t: t.name(u).to_string(),
                        a: a.name(p).to_string(),
                    }
                })
            })
            .collect::<Result<_, _>>()?;
        for other in rest {
            for p in a.elements() {
                if x.unembed(&x.act(other, &x.embed(p))) != Some(row[p]) {
                    return Err(CrossedError::InducedActionDepends {
                        t: t.name(u).to_string(),
                        a: a.name(p).to_string(),
                    });
                }
            }
        }
        eta.push(row);
    }
    Ok(TModule::new(t.clone(), a.clone(), theta, eta)?)
}

/// Checks that (φ₁, φ₂) is a morphism of extensions from `x` to `y`.
pub fn check_equivalence_witness<X, Y>(
    x: &X,
    y: &Y,
    phi1: &dyn Fn(&NElem<X>) -> NElem<Y>,
    phi2: &dyn Fn(&SElem<X>) -> SElem<Y>,
    cfg: &SamplerConfig,
) -> Report
where
    X: CrossedExtension,
    Y: CrossedExtension,
{
    let (s, n) = (x.s_carrier(), x.n_carrier());
    let (s2, n2) = (y.s_carrier(), y.n_carrier());
    let rs = |v: &SElem<X>| s.render(v);
    let rn = |v: &NElem<X>| n.render(v);
    let mut report = Report::new();
    report.check(
        "same-base",
        x.base() == y.base() && x.coefficients() == y.coefficients(),
        Vec::new,
    );
    if !report.is_ok() {
        return report;
    }
    let (t, a) = (x.base(), x.coefficients());

    let mut rng = cfg.rng(31);
    for (m, m2) in draw_pairs(n, n, cfg, &mut rng) {
        let (p, p2) = (phi1(&m), phi1(&m2));
        report.check(
            "phi1-homomorphism",
            phi1(&n.mul(&m, &m2)) == n2.mul(&p, &p2),
            || vec![rn(&m), rn(&m2)],
        );
    }
    let mut rng = cfg.rng(32);
    for (u, v) in draw_pairs(s, s, cfg, &mut rng) {
        report.check(
            "phi2-homomorphism",
            phi2(&s.mul(&u, &v)) == s2.mul(&phi2(&u), &phi2(&v)),
            || vec![rs(&u), rs(&v)],
        );
    }
    for p in a.elements() {
        report.check("CMEE1-embedding", phi1(&x.embed(p)) == y.embed(p), || {
            vec![a.name(p).to_string()]
        });
    }
    let mut rng = cfg.rng(33);
    for m in draw(n, cfg, &mut rng) {
        let image = phi1(&m);
        report.check(
            "CMEE1-middle",
            n2.contains(&image) && y.beta(&image) == phi2(&x.beta(&m)),
            || vec![rn(&m)],
        );
    }
    let mut rng = cfg.rng(34);
    let ss = draw(s, cfg, &mut rng);
    for u in &ss {
        let image = phi2(u);
        report.check(
            "CMEE1-projection",
            s2.contains(&image) && y.project(&image) == x.project(u),
            || vec![rs(u)],
        );
    }
    let mut rng = cfg.rng(35);
    for (u, m) in draw_pairs(s, n, cfg, &mut rng) {
        report.check(
            "CMEE2",
            phi1(&x.act(&u, &m)) == y.act(&phi2(&u), &phi1(&m)),
            || vec![rs(&u), rn(&m)],
        );
    }
    let mut es = idempotents_of(s, &ss);
    es.extend(t.idempotents().iter().filter_map(|&e| x.idempotent_lift(e)));
    for e in &es {
        report.check(
            "alpha-compatibility",
            phi1(&x.alpha(e)) == y.alpha(&phi2(e)),
            || vec![rs(e)],
        );
    }
    match (induced_tmodule(x, cfg), induced_tmodule(y, cfg)) {
        (Ok(mx), Ok(my)) => report.check("induced-module", mx == my, Vec::new),
        (ex, ey) => report.fail(
            "induced-module",
            vec![format!("{:?}", ex.err()), format!("{:?}", ey.err())],
        ),
    }
    report
}

/// Checks that ρ and σ respect idempotents, are order-preserving, and satisfy
/// the identities that follow from this.
pub fn check_admissible<X: CrossedExtension>(
    x: &X,
    tr: &Transversal<SElem<X>, NElem<X>>,
    cfg: &SamplerConfig,
) -> Result<Report, CrossedError> {
    let (s, n, t) = (x.s_carrier(), x.n_carrier(), x.base());
    let rs = |v: &SElem<X>| s.render(v);
    let rho = |u: usize| &tr.rho[u];
    if tr.rho.len() != t.len() {
        return Err(CrossedError::NotTransversal(vec!["rho length".into()]));
    }
    for u in t.elements() {
        if !s.contains(rho(u)) || x.project(rho(u)) != u {
            return Err(CrossedError::NotTransversal(vec![
                "rho".into(),
                t.name(u).to_string(),
            ]));
        }
    }
    let mut report = Report::new();
    for u in t.elements() {
        let tn = t.name(u).to_string();
        if t.is_idempotent(u) {
            report.check("rho-respects-idempotents", s.is_idempotent(rho(u)), || {
                vec![tn.clone()]
            });
        }
        for v in t.elements() {
            if t.leq(u, v) {
                report.check("rho-order-preserving", s.leq(rho(u), rho(v)), || {
                    vec![t.name(u).to_string(), t.name(v).to_string()]
                });
            }
        }
        let r = rho(u);
        report.check("rho-range", s.mul(r, &s.inv(r)) == *rho(t.ran(u)), || {
            vec![tn.clone()]
        });
        report.check("rho-domain", s.mul(&s.inv(r), r) == *rho(t.dom(u)), || {
            vec![tn.clone()]
        });
        for &e in t.idempotents() {
            let conj = t.mul(t.mul(u, e), t.inv(u));
            report.check(
                "rho-conjugation",
                s.mul(&s.mul(r, rho(e)), &s.inv(r)) == *rho(conj),
                || vec![tn.clone(), t.name(e).to_string()],
            );
            report.check(
                "rho-idempotent-prefix",
                *rho(t.mul(e, u)) == s.mul(rho(e), r),
                || vec![t.name(e).to_string(), tn.clone()],
            );
        }
    }

    let mut rng = cfg.rng(41);
    let mut kernel: Vec<SElem<X>> = draw(n, cfg, &mut rng).iter().map(|m| x.beta(m)).collect();
    kernel.extend(t.idempotents().iter().filter_map(|&e| x.idempotent_lift(e)));
    for k in &kernel {
        let lifted = (tr.sigma)(k);
        if !n.contains(&lifted) || x.beta(&lifted) != *k {
            return Err(CrossedError::NotTransversal(vec!["sigma".into(), rs(k)]));
        }
        if s.is_idempotent(k) {
            report.check(
                "sigma-respects-idempotents",
                n.is_idempotent(&lifted),
                || vec![rs(k)],
            );
        }
    }
    let mut rng = cfg.rng(42);
    let es = idempotents_of(s, &draw(s, cfg, &mut rng));
    for (k, e) in kernel.iter().zip(es.iter().cycle()) {
        let lower = s.mul(e, k);
        report.check(
            "sigma-order-preserving",
            n.leq(&(tr.sigma)(&lower), &(tr.sigma)(k)),
            || vec![rs(&lower), rs(k)],
        );
    }
    Ok(report)
}

/// A crossed module given by finite tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCrossedModule {
    s: FiniteInverseSemigroup,
    n: FiniteInverseSemigroup,
    alpha: Vec<Option<usize>>,
    beta: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl TableCrossedModule {
    pub fn new(
        s: FiniteInverseSemigroup,
        n: FiniteInverseSemigroup,
        alpha: Vec<Option<usize>>,
        beta: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, CrossedError> {
        let shape = |what: &str| Err(CrossedError::Shape(what.to_string()));
        if alpha.len() != s.len()
            || s.elements()
                .any(|e| s.is_idempotent(e) != alpha[e].is_some_and(|v| v < n.len()))
        {
            return shape("alpha");
        }
        if beta.len() != n.len() || beta.iter().any(|&b| b >= s.len()) {
            return shape("beta");
        }
        if action.len() != s.len()
            || action
                .iter()
                .any(|row| row.len() != n.len() || row.iter().any(|&v| v >= n.len()))
        {
            return shape("action");
        }
        Ok(Self {
            s,
            n,
            alpha,
            beta,
            action,
        })
    }

    /// A T-module as a crossed module: N = A, S = T, β(a) = θ⁻¹(aa⁻¹).
    pub fn from_module(m: &TModule) -> Self {
        let (t, a) = (m.base(), m.coefficients());
        let beta = a
            .elements()
            .map(|p| {
                m.theta_inverse(a.component_of(p))
                    .expect("theta is bijective")
            })
            .collect();
        Self {
            s: t.clone(),
            n: a.semigroup().clone(),
            alpha: m.theta_table().to_vec(),
            beta,
            action: m.eta_table().to_vec(),
        }
    }

    /// K acted on by conjugation, with β the inclusion.
    pub fn from_kernel_system(k: &GroupKernelNormalSystem) -> Self {
        let s = k.ambient();
        let carrier = k.carrier();
        let local = |x: usize| carrier.iter().position(|&c| c == x).expect("closed");
        let names = carrier.iter().map(|&c| s.name(c).to_string()).collect();
        let n = FiniteInverseSemigroup::from_fn(names, |p, q| local(s.mul(carrier[p], carrier[q])))
            .expect("subsemigroup of an inverse semigroup closed under inverses");
        let alpha = s
            .elements()
            .map(|e| s.is_idempotent(e).then(|| local(e)))
            .collect();
        let action = s
            .elements()
            .map(|u| {
                carrier
                    .iter()
                    .map(|&c| local(s.mul(s.mul(u, c), s.inv(u))))
                    .collect()
            })
            .collect();
        Self {
            s: s.clone(),
            n,
            alpha,
            beta: carrier,
            action,
        }
    }

    pub fn acting(&self) -> &FiniteInverseSemigroup {
        &self.s
    }

    pub fn kernel(&self) -> &FiniteInverseSemigroup {
        &self.n
    }

    /// Overwrite one value of λ.
    pub fn set_action(&mut self, s: usize, n: usize, value: usize) {
        self.action[s][n] = value;
    }
}

impl CrossedModule for TableCrossedModule {
    type S = FiniteInverseSemigroup;
    type N = FiniteInverseSemigroup;

    fn s_carrier(&self) -> &FiniteInverseSemigroup {
        &self.s
    }

    fn n_carrier(&self) -> &FiniteInverseSemigroup {
        &self.n
    }

    fn alpha(&self, e: &usize) -> usize {
        // off idempotents α is undefined; report something that fails the axioms
        self.alpha[*e].unwrap_or(usize::MAX)
    }

    fn beta(&self, n: &usize) -> usize {
        self.beta[*n]
    }

    fn act(&self, s: &usize, n: &usize) -> usize {
        self.action[*s][*n]
    }
}

/// A crossed module extension given by finite tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableExtension {
    cm: TableCrossedModule,
    base: FiniteInverseSemigroup,
    coefficients: SemilatticeOfAbelianGroups,
    embed: Vec<usize>,
    project: Vec<usize>,
}

impl TableExtension {
    pub fn new(
        cm: TableCrossedModule,
        base: FiniteInverseSemigroup,
        coefficients: SemilatticeOfAbelianGroups,
        embed: Vec<usize>,
        project: Vec<usize>,
    ) -> Result<Self, CrossedError> {
        if embed.len() != coefficients.len() || embed.iter().any(|&v| v >= cm.n.len()) {
            return Err(CrossedError::Shape("embedding".into()));
        }
        if project.len() != cm.s.len() || project.iter().any(|&v| v >= base.len()) {
            return Err(CrossedError::Shape("projection".into()));
        }
        Ok(Self {
            cm,
            base,
            coefficients,
            embed,
            project,
        })
    }

    /// A → A → T → T with i and π identities.
    pub fn identity(m: &TModule) -> Self {
        let cm = TableCrossedModule::from_module(m);
        Self {
            embed: m.coefficients().elements().collect(),
            project: m.base().elements().collect(),
            cm,
            base: m.base().clone(),
            coefficients: m.coefficients().clone(),
        }
    }

    pub fn crossed_module(&self) -> &TableCrossedModule {
        &self.cm
    }
}

impl CrossedModule for TableExtension {
    type S = FiniteInverseSemigroup;
    type N = FiniteInverseSemigroup;

    fn s_carrier(&self) -> &FiniteInverseSemigroup {
        &self.cm.s
    }

    fn n_carrier(&self) -> &FiniteInverseSemigroup {
        &self.cm.n
    }

    fn alpha(&self, e: &usize) -> usize {
        self.cm.alpha(e)
    }

    fn beta(&self, n: &usize) -> usize {
        self.cm.beta(n)
    }

    fn act(&self, s: &usize, n: &usize) -> usize {
        self.cm.act(s, n)
    }
}

impl CrossedExtension for TableExtension {
    fn base(&self) -> &FiniteInverseSemigroup {
        &self.base
    }

    fn coefficients(&self) -> &SemilatticeOfAbelianGroups {
        &self.coefficients
    }

    fn embed(&self, a: usize) -> usize {
        self.embed[a]
    }

    fn unembed(&self, n: &usize) -> Option<usize> {
        self.embed.iter().position(|v| v == n)
    }

    fn project(&self, s: &usize) -> usize {
        self.project[*s]
    }

    fn idempotent_lift(&self, e: usize) -> Option<usize> {
        self.cm
            .s
            .idempotents()
            .iter()
            .copied()
            .find(|&f| self.project[f] == e)
    }

    fn beta_preimage(&self, s: &usize) -> Option<usize> {
        self.cm.beta.iter().position(|b| b == s)
    }

    fn preimages(&self, t: usize, _cfg: &SamplerConfig, _rng: &mut ChaCha8Rng) -> Vec<usize> {
        self.cm
            .s
            .elements()
            .filter(|&s| self.project[s] == t)
            .collect()
    }
}
