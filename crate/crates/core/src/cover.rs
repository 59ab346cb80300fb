//! The E-unitary cover of T through the free group FG(T), the semilattice of
//! groups N of triples `(a, e, w)`, and the cocycle-driven action of the cover
//! on N.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cochain::Cochain;
use crate::crossed::{draw, draw_pairs, Carrier, CrossedExtension, CrossedModule, SamplerConfig};
use crate::report::Report;
use crate::semigroup::FiniteInverseSemigroup;
use crate::tmodule::{SemilatticeOfAbelianGroups, TModule};
use crate::words::{
    collapse, cover_member, leq_adjoined, nu, phi, render_letters, sample_reduced, sample_word,
    CollapseStep, Letter, ReducedWord, Sign, Word, WordError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("({t}, {word}) is not in the cover: {t} is not below the value of the word")]
    NotInCover { t: String, word: String },
    #[error("({a}, {e}, {word}) is not in N")]
    NotInKernel { a: String, e: String, word: String },
    #[error("cocycle is not strongly normalized")]
    NotStronglyNormalized,
    #[error("not an order-preserving 3-cocycle")]
    NotOrderPreservingCocycle,
}

fn render_word(t: &FiniteInverseSemigroup, w: &ReducedWord) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        render_letters(t, w.letters())
    }
}

/// `(t, w)` with `t ≤ ν(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverElement {
    t: usize,
    word: ReducedWord,
}

impl CoverElement {
    /// Rejects pairs outside the cover; in particular `(t, ε)` for non-idempotent `t`.
    pub fn new(
        base: &FiniteInverseSemigroup,
        t: usize,
        word: ReducedWord,
    ) -> Result<Self, CoverError> {
        if t < base.len() && cover_member(base, t, &word) {
            Ok(Self { t, word })
        } else {
            Err(CoverError::NotInCover {
                t: base
                    .names()
                    .get(t)
                    .cloned()
                    .unwrap_or_else(|| t.to_string()),
                word: render_word(base, &word),
            })
        }
    }

    /// `(t, [t])`.
    pub fn canonical(t: usize) -> Self {
        Self {
            t,
            word: ReducedWord::letter(Letter::pos(t)),
        }
    }

    /// `(e, ε)` for an idempotent `e`.
    pub fn idempotent(e: usize) -> Self {
        Self {
            t: e,
            word: ReducedWord::empty(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }
}

/// `(a, e, w)` with `e ≤ ν(w)` and `a ∈ A_{θ(e)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NElement {
    a: usize,
    e: usize,
    word: ReducedWord,
}

impl NElement {
    pub fn new(
        module: &TModule,
        a: usize,
        e: usize,
        word: ReducedWord,
    ) -> Result<Self, CoverError> {
        let n = Self { a, e, word };
        if kernel_member(module, &n) {
            Ok(n)
        } else {
            let t = module.base();
            Err(CoverError::NotInKernel {
                a: a.to_string(),
                e: t.names().get(e).cloned().unwrap_or_else(|| e.to_string()),
                word: render_word(t, &n.word),
            })
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }
}

fn kernel_member(module: &TModule, n: &NElement) -> bool {
    let (t, a) = (module.base(), module.coefficients());
    n.a < a.len()
        && n.e < t.len()
        && t.is_idempotent(n.e)
        && a.component_of(n.a) == module.theta(n.e)
        && leq_adjoined(t, Some(n.e), nu(t, &n.word))
}

/// S = {(t, w) ∈ T × FG(T) | t ≤ ν(w)}.
#[derive(Debug, Clone)]
pub struct CoverSemigroup {
    base: Arc<FiniteInverseSemigroup>,
}

impl CoverSemigroup {
    pub fn new(base: FiniteInverseSemigroup) -> Self {
        Self {
            base: Arc::new(base),
        }
    }

    pub fn base(&self) -> &FiniteInverseSemigroup {
        &self.base
    }
}

impl Carrier for CoverSemigroup {
    type Elem = CoverElement;

    fn mul(&self, x: &CoverElement, y: &CoverElement) -> CoverElement {
        CoverElement {
            t: self.base.mul(x.t, y.t),
            word: x.word.mul(&y.word),
        }
    }

    fn inv(&self, x: &CoverElement) -> CoverElement {
        CoverElement {
            t: self.base.inv(x.t),
            word: x.word.inverse(),
        }
    }

    fn contains(&self, x: &CoverElement) -> bool {
        x.t < self.base.len() && cover_member(&self.base, x.t, &x.word)
    }

    fn elements(&self) -> Option<Vec<CoverElement>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng, max_word_len: usize) -> CoverElement {
        let t = &self.base;
        let word = sample_reduced(t.len(), max_word_len, rng);
        let value = nu(t, &word);
        let below: Vec<usize> = t
            .elements()
            .filter(|&x| leq_adjoined(t, Some(x), value))
            .collect();
        CoverElement {
            t: below[rng.gen_range(0..below.len())],
            word,
        }
    }

    fn render(&self, x: &CoverElement) -> String {
        format!(
            "({}, {})",
            self.base.name(x.t),
            render_word(&self.base, &x.word)
        )
    }

    fn is_idempotent(&self, x: &CoverElement) -> bool {
        x.word.is_empty() && self.base.is_idempotent(x.t)
    }
}

/// N = {(a, e, w)} with the coordinatewise product.
#[derive(Debug, Clone)]
pub struct CoverKernel {
    module: Arc<TModule>,
}

impl CoverKernel {
    pub fn new(module: Arc<TModule>) -> Self {
        Self { module }
    }
}

impl Carrier for CoverKernel {
    type Elem = NElement;

    fn mul(&self, x: &NElement, y: &NElement) -> NElement {
        NElement {
            a: self.module.coefficients().mul(x.a, y.a),
            e: self.module.base().mul(x.e, y.e),
            word: x.word.mul(&y.word),
        }
    }

    fn inv(&self, x: &NElement) -> NElement {
        NElement {
            a: self.module.coefficients().inv(x.a),
            e: x.e,
            word: x.word.inverse(),
        }
    }

    fn contains(&self, x: &NElement) -> bool {
        kernel_member(&self.module, x)
    }

    fn elements(&self) -> Option<Vec<NElement>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng, max_word_len: usize) -> NElement {
        let (t, a) = (self.module.base(), self.module.coefficients());
        // words whose value lies above no idempotent carry no element of N
        let (word, below) = loop {
            let word = sample_reduced(t.len(), max_word_len, rng);
            let value = nu(t, &word);
            let below: Vec<usize> = t
                .idempotents()
                .iter()
                .copied()
                .filter(|&e| leq_adjoined(t, Some(e), value))
                .collect();
            if !below.is_empty() {
                break (word, below);
            }
        };
        let e = below[rng.gen_range(0..below.len())];
        let component = a.component(self.module.theta(e));
        NElement {
            a: component[rng.gen_range(0..component.len())],
            e,
            word,
        }
    }

    fn render(&self, x: &NElement) -> String {
        let (t, a) = (self.module.base(), self.module.coefficients());
        format!(
            "({}, {}, {})",
            a.name(x.a),
            t.name(x.e),
            render_word(t, &x.word)
        )
    }

    fn is_idempotent(&self, x: &NElement) -> bool {
        x.word.is_empty() && self.module.coefficients().semigroup().is_idempotent(x.a)
    }
}

/// Checked mode evaluates λ both recursively and in closed form and records
/// disagreements; fast mode uses the closed form only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Checked,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ActionStats {
    pub lambda_evaluations: u64,
    pub lambda_mismatches: u64,
    pub invariant_failures: u64,
}

/// ξ, ζ, γ and λ for a fixed strongly normalized order-preserving 3-cocycle.
#[derive(Debug)]
pub struct CocycleAction {
    module: Arc<TModule>,
    cocycle: Cochain,
    mode: Mode,
    memo: RwLock<HashMap<(usize, ReducedWord), usize>>,
    evaluations: AtomicU64,
    mismatches: AtomicU64,
    invariant_failures: AtomicU64,
}

impl CocycleAction {
    pub fn new(module: Arc<TModule>, cocycle: Cochain, mode: Mode) -> Result<Self, CoverError> {
        if cocycle.degree() != 3
            || module.check_cochain(&cocycle).is_err()
            || !module.is_cocycle(&cocycle)
            || !module.is_order_preserving(&cocycle)
        {
            return Err(CoverError::NotOrderPreservingCocycle);
        }
        if !module.is_strongly_normalized(&cocycle) {
            return Err(CoverError::NotStronglyNormalized);
        }
        Ok(Self {
            module,
            cocycle,
            mode,
            memo: RwLock::new(HashMap::new()),
            evaluations: AtomicU64::new(0),
            mismatches: AtomicU64::new(0),
            invariant_failures: AtomicU64::new(0),
        })
    }

    pub fn module(&self) -> &TModule {
        &self.module
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn stats(&self) -> ActionStats {
        ActionStats {
            lambda_evaluations: self.evaluations.load(Ordering::Relaxed),
            lambda_mismatches: self.mismatches.load(Ordering::Relaxed),
            invariant_failures: self.invariant_failures.load(Ordering::Relaxed),
        }
    }

    /// ξ_t(w) for a nonempty, not necessarily reduced, word.
    pub fn xi(&self, t: usize, w: &[Letter]) -> Result<usize, WordError> {
        let (base, a) = (self.module.base(), self.module.coefficients());
        let steps = collapse(base, w)?;
        let c = &self.cocycle;
        let value = steps.steps.iter().fold(
            self.module.theta_ran(base.mul(t, steps.last)),
            |acc, step| match *step {
                CollapseStep::Direct(x, y) => a.mul(acc, c.get(&[t, x, y])),
                CollapseStep::Inverted(x, y) => a.mul(acc, a.inv(c.get(&[t, x, y]))),
            },
        );
        Ok(value)
    }

    /// ζ_t(w): ξ_t on the reduced word, θ(r(t)) on ε. Memoized.
    pub fn zeta(&self, t: usize, w: &ReducedWord) -> usize {
        if w.is_empty() {
            return self.module.theta_ran(t);
        }
        let key = (t, w.clone());
        if let Some(&v) = self.memo.read().expect("memo lock").get(&key) {
            return v;
        }
        let v = self.xi(t, w.letters()).expect("nonempty word");
        self.memo.write().expect("memo lock").insert(key, v);
        v
    }

    /// γ_t for `Sign::Pos`, γ_t⁻¹ for `Sign::Neg`.
    pub fn gamma(&self, t: usize, sign: Sign, n: &NElement) -> NElement {
        let base = self.module.base();
        let s = match sign {
            Sign::Pos => t,
            Sign::Neg => base.inv(t),
        };
        let a = self.module.coefficients();
        NElement {
            a: a.mul(self.zeta(s, &n.word), self.module.eta(s, n.a)),
            e: base.mul(base.mul(s, n.e), base.inv(s)),
            word: n.word.conjugate(Letter { base: t, sign }),
        }
    }

    /// α(e, ε)·n.
    fn scale(&self, e: usize, n: &NElement) -> NElement {
        let (base, a) = (self.module.base(), self.module.coefficients());
        NElement {
            a: a.mul(self.module.theta(e), n.a),
            e: base.mul(e, n.e),
            word: n.word.clone(),
        }
    }

    /// α(r(s))·(γ_{t₁}^{ε₁}∘…∘γ_{t_k}^{ε_k})(n) over the letters of u; α(s)·n when u = ε.
    pub fn lambda_recursive(&self, s: &CoverElement, n: &NElement) -> NElement {
        if s.word.is_empty() {
            return self.scale(s.t, n);
        }
        let moved = s
            .word
            .letters()
            .iter()
            .rev()
            .fold(n.clone(), |m, l| self.gamma(l.base, l.sign, &m));
        self.scale(self.module.base().ran(s.t), &moved)
    }

    /// (ζ_t(w)η_t(a), tet⁻¹, uwu⁻¹).
    pub fn lambda_closed(&self, s: &CoverElement, n: &NElement) -> NElement {
        let (base, a) = (self.module.base(), self.module.coefficients());
        NElement {
            a: a.mul(self.zeta(s.t, &n.word), self.module.eta(s.t, n.a)),
            e: base.mul(base.mul(s.t, n.e), base.inv(s.t)),
            word: s.word.mul(&n.word).mul(&s.word.inverse()),
        }
    }

    pub fn lambda(&self, s: &CoverElement, n: &NElement) -> NElement {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        match self.mode {
            Mode::Fast => self.lambda_closed(s, n),
            Mode::Checked => {
                let recursive = self.lambda_recursive(s, n);
                if recursive != self.lambda_closed(s, n) {
                    self.mismatches.fetch_add(1, Ordering::Relaxed);
                }
                if !kernel_member(&self.module, &recursive) {
                    self.invariant_failures.fetch_add(1, Ordering::Relaxed);
                }
                recursive
            }
        }
    }
}

/// The crossed module extension `A → N → S → T` built from a cocycle.
#[derive(Debug, Clone)]
pub struct CoverExtension {
    module: Arc<TModule>,
    action: Arc<CocycleAction>,
    s: CoverSemigroup,
    n: CoverKernel,
}

/// Requires `c` to be a strongly normalized order-preserving 3-cocycle.
pub fn build_extension_from_cocycle(
    module: &TModule,
    c: &Cochain,
    mode: Mode,
) -> Result<CoverExtension, CoverError> {
    let module = Arc::new(module.clone());
    let action = Arc::new(CocycleAction::new(module.clone(), c.clone(), mode)?);
    Ok(CoverExtension {
        s: CoverSemigroup::new(module.base().clone()),
        n: CoverKernel::new(module.clone()),
        module,
        action,
    })
}

impl CoverExtension {
    pub fn module(&self) -> &TModule {
        &self.module
    }

    pub fn action(&self) -> &CocycleAction {
        &self.action
    }

    pub fn cocycle(&self) -> &Cochain {
        self.action.cocycle()
    }

    /// σ(e, w) = (θ(e), e, w), the canonical section of β.
    pub fn sigma(&self, s: &CoverElement) -> NElement {
        NElement {
            a: self.module.theta(s.t),
            e: s.t,
            word: s.word.clone(),
        }
    }
}

impl CrossedModule for CoverExtension {
    type S = CoverSemigroup;
    type N = CoverKernel;

    fn s_carrier(&self) -> &CoverSemigroup {
        &self.s
    }

    fn n_carrier(&self) -> &CoverKernel {
        &self.n
    }

    fn alpha(&self, e: &CoverElement) -> NElement {
        let r = self.module.base().ran(e.t);
        NElement {
            a: self.module.theta(r),
            e: r,
            word: e.word.clone(),
        }
    }

    fn beta(&self, n: &NElement) -> CoverElement {
        CoverElement {
            t: n.e,
            word: n.word.clone(),
        }
    }

    fn act(&self, s: &CoverElement, n: &NElement) -> NElement {
        self.action.lambda(s, n)
    }
}

impl CrossedExtension for CoverExtension {
    fn base(&self) -> &FiniteInverseSemigroup {
        self.module.base()
    }

    fn coefficients(&self) -> &SemilatticeOfAbelianGroups {
        self.module.coefficients()
    }

    fn embed(&self, a: usize) -> NElement {
        let e = self
            .module
            .theta_inverse(self.module.coefficients().component_of(a))
            .expect("theta is bijective");
        NElement {
            a,
            e,
            word: ReducedWord::empty(),
        }
    }

    fn unembed(&self, n: &NElement) -> Option<usize> {
        (n.word.is_empty() && kernel_member(&self.module, n)).then_some(n.a)
    }

    fn project(&self, s: &CoverElement) -> usize {
        s.t
    }

    fn idempotent_lift(&self, e: usize) -> Option<CoverElement> {
        self.module
            .base()
            .is_idempotent(e)
            .then(|| CoverElement::idempotent(e))
    }

    fn beta_preimage(&self, s: &CoverElement) -> Option<NElement> {
        (self.module.base().is_idempotent(s.t) && self.s.contains(s)).then(|| self.sigma(s))
    }

    fn preimages(&self, t: usize, cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<CoverElement> {
        let base = self.module.base();
        let mut out = vec![CoverElement::canonical(t)];
        if base.is_idempotent(t) {
            out.push(CoverElement::idempotent(t));
        }
        let head = ReducedWord::letter(Letter::pos(t));
        for _ in 0..16 {
            let word = head.mul(&sample_reduced(base.len(), cfg.max_word_len, rng));
            if cover_member(base, t, &word) && !out.iter().any(|s| s.word == word) {
                out.push(CoverElement { t, word });
            }
        }
        out
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Checked => "checked",
            Mode::Fast => "fast",
        })
    }
}

/// Inverse semigroup laws, E(S) = E(T)×{ε}, E-unitarity and the properties of π.
pub fn check_cover_laws(base: &FiniteInverseSemigroup, cfg: &SamplerConfig) -> Report {
    let s = CoverSemigroup::new(base.clone());
    let mut report = Report::new();
    let mut rng = cfg.rng(51);
    let samples = draw(&s, cfg, &mut rng);
    for x in &samples {
        let rx = || vec![s.render(x)];
        let xi = s.inv(x);
        report.check("cover-membership", s.contains(x) && s.contains(&xi), rx);
        report.check(
            "cover-inverse",
            s.mul(&s.mul(x, &xi), x) == *x && s.mul(&s.mul(&xi, x), &xi) == xi,
            rx,
        );
        let idempotent = s.mul(x, x) == *x;
        report.check(
            "cover-idempotents",
            idempotent == (x.word.is_empty() && base.is_idempotent(x.t)),
            rx,
        );
        for &e in base.idempotents() {
            let lower = CoverElement::idempotent(e);
            if s.leq(&lower, x) {
                report.check("cover-e-unitary", idempotent, || {
                    vec![s.render(&lower), s.render(x)]
                });
            }
        }
    }
    let mut rng = cfg.rng(52);
    for (x, y) in draw_pairs(&s, &s, cfg, &mut rng) {
        let xy = s.mul(&x, &y);
        report.check("cover-closed", s.contains(&xy), || {
            vec![s.render(&x), s.render(&y)]
        });
        report.check(
            "projection-homomorphism",
            xy.t == base.mul(x.t, y.t),
            || vec![s.render(&x), s.render(&y)],
        );
        let z = s.sample(&mut rng, cfg.max_word_len);
        report.check(
            "cover-associative",
            s.mul(&xy, &z) == s.mul(&x, &s.mul(&y, &z)),
            || vec![s.render(&x), s.render(&y), s.render(&z)],
        );
        let (e, f) = (s.mul(&s.inv(&x), &x), s.mul(&y, &s.inv(&y)));
        report.check(
            "cover-idempotents-commute",
            s.mul(&e, &f) == s.mul(&f, &e),
            || vec![s.render(&e), s.render(&f)],
        );
    }
    for &e in base.idempotents() {
        let lift = CoverElement::idempotent(e);
        report.check(
            "cover-idempotent-lift",
            s.contains(&lift) && s.mul(&lift, &lift) == lift,
            || vec![base.name(e).to_string()],
        );
        for &f in base.idempotents() {
            if e != f {
                report.check(
                    "projection-idempotent-separating",
                    lift != CoverElement::idempotent(f),
                    || vec![base.name(e).to_string(), base.name(f).to_string()],
                );
            }
        }
    }
    for t in base.elements() {
        let x = CoverElement::canonical(t);
        report.check("projection-surjective", s.contains(&x) && x.t == t, || {
            vec![base.name(t).to_string()]
        });
    }
    report
}

/// The identities satisfied by ξ, ζ, γ and λ, on seeded samples.
pub fn check_action_laws(ext: &CoverExtension, cfg: &SamplerConfig) -> Report {
    let action = ext.action();
    let module = ext.module();
    let (t, a) = (module.base(), module.coefficients());
    let (s_carrier, n_carrier) = (ext.s_carrier(), ext.n_carrier());
    let order = t.len();
    let max_len = cfg.max_word_len.max(1);
    let rw = |w: &[Letter]| render_letters(t, w);
    let th = |x: usize| module.theta_ran(x);
    let mut report = Report::new();
    let mut rng = cfg.rng(61);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(1..=max_len);
        sample_word(order, len, rng)
    };
    let idempotents = t.idempotents().to_vec();

    for _ in 0..cfg.samples {
        let x = rng.gen_range(0..order);
        let u = word(&mut rng);
        let v = if rng.gen_bool(0.25) {
            Word::empty()
        } else {
            word(&mut rng)
        };
        let pu = phi(t, u.letters()).expect("nonempty");
        let xi_u = action.xi(x, u.letters()).expect("nonempty");

        report.check(
            "xi-component",
            a.component_of(xi_u) == th(t.mul(x, pu)),
            || vec![t.name(x).to_string(), rw(u.letters())],
        );

        let uv = u.concat(&v);
        let mut shifted = vec![Letter::pos(pu)];
        shifted.extend_from_slice(v.letters());
        report.check(
            "xi-concatenation",
            action.xi(x, uv.letters()) == action.xi(x, &shifted).map(|r| a.mul(xi_u, r)),
            || vec![t.name(x).to_string(), rw(u.letters()), rw(v.letters())],
        );

        let e = idempotents[rng.gen_range(0..idempotents.len())];
        let mut prefixed = vec![Letter::pos(e)];
        prefixed.extend_from_slice(u.letters());
        report.check(
            "xi-idempotent-absorption",
            action.xi(x, &prefixed) == Ok(a.mul(th(t.mul(x, e)), xi_u)),
            || {
                vec![
                    t.name(x).to_string(),
                    t.name(e).to_string(),
                    rw(u.letters()),
                ]
            },
        );

        let below: Vec<usize> = idempotents
            .iter()
            .copied()
            .filter(|&f| t.leq(f, pu))
            .collect();
        if !below.is_empty() {
            let f = below[rng.gen_range(0..below.len())];
            let scale = th(t.mul(x, f));
            let inverse = action.xi(x, u.involution().letters()).expect("nonempty");
            report.check(
                "xi-cancellation",
                a.mul(scale, a.mul(xi_u, inverse)) == scale,
                || {
                    vec![
                        t.name(x).to_string(),
                        t.name(f).to_string(),
                        rw(u.letters()),
                    ]
                },
            );
        }

        // composition: θ(r(t y^ε e)) ζ_t([y]^ε w [y]^-ε) η_t(ζ_{y^ε}(w)) = θ(r(t y^ε e)) ζ_{t y^ε}(w)
        let y = rng.gen_range(0..order);
        let sign = if rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        };
        let ye = Letter { base: y, sign }.value(t);
        let w = sample_reduced(order, cfg.max_word_len, &mut rng);
        let value = nu(t, &w);
        let lower: Vec<usize> = idempotents
            .iter()
            .copied()
            .filter(|&f| leq_adjoined(t, Some(f), value))
            .collect();
        if lower.is_empty() {
            continue;
        }
        let f = lower[rng.gen_range(0..lower.len())];
        let scale = th(t.mul(t.mul(x, ye), f));
        let lhs = a.mul(
            scale,
            a.mul(
                action.zeta(x, &w.conjugate(Letter { base: y, sign })),
                module.eta(x, action.zeta(ye, &w)),
            ),
        );
        let rhs = a.mul(scale, action.zeta(t.mul(x, ye), &w));
        report.check("zeta-composition", lhs == rhs, || {
            vec![
                t.name(x).to_string(),
                format!("{}{}", t.name(y), sign),
                t.name(f).to_string(),
                render_word(t, &w),
            ]
        });
    }

    let mut rng = cfg.rng(62);
    for (m, n) in draw_pairs(n_carrier, n_carrier, cfg, &mut rng) {
        let x = rng.gen_range(0..order);
        let rm = || {
            vec![
                t.name(x).to_string(),
                n_carrier.render(&m),
                n_carrier.render(&n),
            ]
        };
        let mn = n_carrier.mul(&m, &n);
        for sign in [Sign::Pos, Sign::Neg] {
            report.check(
                "gamma-endomorphism",
                action.gamma(x, sign, &mn)
                    == n_carrier.mul(&action.gamma(x, sign, &m), &action.gamma(x, sign, &n)),
                rm,
            );
        }
        let back = action.gamma(x, Sign::Pos, &action.gamma(x, Sign::Neg, &m));
        let forth = action.gamma(x, Sign::Neg, &action.gamma(x, Sign::Pos, &m));
        let ran = CoverElement::idempotent(t.ran(x));
        let dom = CoverElement::idempotent(t.dom(x));
        report.check(
            "gamma-relatively-invertible",
            back == n_carrier.mul(&ext.alpha(&ran), &m)
                && forth == n_carrier.mul(&ext.alpha(&dom), &m),
            rm,
        );
        for g in [&back, &forth, &mn] {
            report.check("kernel-closed", n_carrier.contains(g), rm);
        }
    }

    let mut rng = cfg.rng(63);
    for (s, n) in draw_pairs(s_carrier, n_carrier, cfg, &mut rng) {
        let closed = action.lambda_closed(&s, &n);
        report.check(
            "lambda-closed-form",
            action.lambda_recursive(&s, &n) == closed && n_carrier.contains(&closed),
            || vec![s_carrier.render(&s), n_carrier.render(&n)],
        );
    }
    let stats = action.stats();
    report.check(
        "lambda-closed-form-every-evaluation",
        stats.lambda_mismatches == 0 && stats.invariant_failures == 0,
        || {
            vec![
                format!("evaluations={}", stats.lambda_evaluations),
                format!("mismatches={}", stats.lambda_mismatches),
                format!("invariant_failures={}", stats.invariant_failures),
            ]
        },
    );
    report
}
