//! Semilattices of abelian groups and T-modules `(θ, η)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::report::Report;
use crate::semigroup::{FiniteInverseSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("coefficient semigroup is not commutative")]
    NotCommutative,
    #[error("component {0} has no identity")]
    NoComponentIdentity(usize),
    #[error("transport map {from} -> {to} is malformed")]
    BadTransport { from: usize, to: usize },
    #[error("theta has {got} entries, T has {expected} elements")]
    ThetaLength { expected: usize, got: usize },
    #[error("theta must be defined exactly on idempotents (element {0})")]
    ThetaDomain(String),
    #[error("theta is not a bijection onto the idempotents of A")]
    ThetaNotBijective,
    #[error("eta table for {0} is malformed")]
    EtaShape(String),
}

/// A commutative inverse semigroup, viewed as the disjoint union of its
/// group components `A_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeOfAbelianGroups {
    table: FiniteInverseSemigroup,
    components: BTreeMap<usize, Vec<usize>>,
}

/// One group component given by its own table (entries index `elements`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupComponent {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl SemilatticeOfAbelianGroups {
    pub fn new(table: FiniteInverseSemigroup) -> Result<Self, ModuleError> {
        if !table.is_commutative() {
            return Err(ModuleError::NotCommutative);
        }
        let components = table
            .clifford_components()
            .expect("commutative inverse semigroups are Clifford");
        Ok(Self { table, components })
    }

    /// Glue group components along a meet on component indices.
    ///
    /// `transport[(e, f)]` maps `A_e → A_f` for `f < e` (entries index the
    /// component element lists). Missing maps are composed from given ones
    /// along a descending chain; if no chain exists the trivial map is used.
    pub fn from_components(
        components: &[GroupComponent],
        meet: impl Fn(usize, usize) -> usize,
        transport: &BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self, ModuleError> {
        let k = components.len();
        let mut identity = Vec::with_capacity(k);
        for (i, c) in components.iter().enumerate() {
            let id = (0..c.elements.len())
                .find(|&u| (0..c.elements.len()).all(|x| c.table[u][x] == x))
                .ok_or(ModuleError::NoComponentIdentity(i))?;
            identity.push(id);
        }
        for (&(from, to), map) in transport {
            let ok = from < k
                && to < k
                && from != to
                && meet(from, to) == to
                && map.len() == components[from].elements.len()
                && map.iter().all(|&v| v < components[to].elements.len());
            if !ok {
                return Err(ModuleError::BadTransport { from, to });
            }
        }
        fn resolve(
            from: usize,
            to: usize,
            k: usize,
            sizes: &[usize],
            identity: &[usize],
            meet: &dyn Fn(usize, usize) -> usize,
            given: &BTreeMap<(usize, usize), Vec<usize>>,
        ) -> Vec<usize> {
            if from == to {
                return (0..sizes[from]).collect();
            }
            if let Some(m) = given.get(&(from, to)) {
                return m.clone();
            }
            for mid in 0..k {
                if mid != from && given.contains_key(&(from, mid)) && meet(mid, to) == to {
                    let first = &given[&(from, mid)];
                    let rest = resolve(mid, to, k, sizes, identity, meet, given);
                    return first.iter().map(|&x| rest[x]).collect();
                }
            }
            vec![identity[to]; sizes[from]]
        }
        let sizes: Vec<usize> = components.iter().map(|c| c.elements.len()).collect();
        let offsets: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let mut global = Vec::new();
        for (i, c) in components.iter().enumerate() {
            for x in 0..c.elements.len() {
                global.push((i, x));
            }
        }
        let mut maps = BTreeMap::new();
        for e in 0..k {
            for f in 0..k {
                if meet(e, f) == f {
                    maps.insert(
                        (e, f),
                        resolve(e, f, k, &sizes, &identity, &meet, transport),
                    );
                }
            }
        }
        let names = components
            .iter()
            .flat_map(|c| c.elements.iter().cloned())
            .collect();
        let table = FiniteInverseSemigroup::from_fn(names, |p, q| {
            let ((e, x), (f, y)) = (global[p], global[q]);
            let g = meet(e, f);
            let (x, y) = (maps[&(e, g)][x], maps[&(f, g)][y]);
            offsets[g] + components[g].table[x][y]
        })?;
        Self::new(table)
    }

    pub fn semigroup(&self) -> &FiniteInverseSemigroup {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.table.elements()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.table.inv(x)
    }

    /// Identity of the component containing `x`.
    #[inline]
    pub fn component_of(&self, x: usize) -> usize {
        self.table.ran(x)
    }

    /// Members of the component with identity `e`.
    pub fn component(&self, e: usize) -> &[usize] {
        &self.components[&e]
    }

    pub fn components(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.components
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.table.leq(x, y)
    }

    pub fn name(&self, x: usize) -> &str {
        self.table.name(x)
    }
}

/// A T-module with trivial twisting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TModule {
    t: FiniteInverseSemigroup,
    a: SemilatticeOfAbelianGroups,
    theta: Vec<Option<usize>>,
    eta: Vec<Vec<usize>>,
    /// θ(r(s)) for every s.
    range_component: Vec<usize>,
}

impl TModule {
    /// Checks shapes and that θ is a bijection `E(T) → E(A)`; the module
    /// axioms themselves are checked by [`TModule::validate`].
    pub fn new(
        t: FiniteInverseSemigroup,
        a: SemilatticeOfAbelianGroups,
        theta: Vec<Option<usize>>,
        eta: Vec<Vec<usize>>,
    ) -> Result<Self, ModuleError> {
        if theta.len() != t.len() {
            return Err(ModuleError::ThetaLength {
                expected: t.len(),
                got: theta.len(),
            });
        }
        let es = a.semigroup().idempotents();
        let mut hit = vec![false; a.len()];
        for s in t.elements() {
            match (t.is_idempotent(s), theta[s]) {
                (true, Some(v)) if v < a.len() && a.semigroup().is_idempotent(v) => {
                    if hit[v] {
                        return Err(ModuleError::ThetaNotBijective);
                    }
                    hit[v] = true;
                }
                (false, None) => {}
                _ => return Err(ModuleError::ThetaDomain(t.name(s).to_string())),
            }
        }
        if es.iter().any(|&e| !hit[e]) {
            return Err(ModuleError::ThetaNotBijective);
        }
        if eta.len() != t.len() {
            return Err(ModuleError::EtaShape("T".into()));
        }
        for s in t.elements() {
            if eta[s].len() != a.len() || eta[s].iter().any(|&v| v >= a.len()) {
                return Err(ModuleError::EtaShape(t.name(s).to_string()));
            }
        }
        let range_component = t
            .elements()
            .map(|s| theta[t.ran(s)].expect("ran is idempotent"))
            .collect();
        Ok(Self {
            t,
            a,
            theta,
            eta,
            range_component,
        })
    }

    pub fn base(&self) -> &FiniteInverseSemigroup {
        &self.t
    }

    pub fn coefficients(&self) -> &SemilatticeOfAbelianGroups {
        &self.a
    }

    /// θ(e) for an idempotent `e`.
    #[inline]
    pub fn theta(&self, e: usize) -> usize {
        self.theta[e].expect("theta is defined on idempotents")
    }

    pub fn theta_table(&self) -> &[Option<usize>] {
        &self.theta
    }

    /// θ(r(s)) = θ(ss⁻¹).
    #[inline]
    pub fn theta_ran(&self, s: usize) -> usize {
        self.range_component[s]
    }

    /// θ⁻¹ on idempotents of A.
    pub fn theta_inverse(&self, x: usize) -> Option<usize> {
        self.t
            .idempotents()
            .iter()
            .copied()
            .find(|&e| self.theta(e) == x)
    }

    #[inline]
    pub fn eta(&self, s: usize, a: usize) -> usize {
        self.eta[s][a]
    }

    pub fn eta_table(&self) -> &[Vec<usize>] {
        &self.eta
    }

    /// Exhaustive check of the module axioms.
    pub fn validate(&self) -> Report {
        let (t, a) = (&self.t, &self.a);
        let tn = |s: usize| t.name(s).to_string();
        let an = |x: usize| a.name(x).to_string();
        let mut report = Report::new();
        for &e in t.idempotents() {
            for &f in t.idempotents() {
                report.check(
                    "theta-meet",
                    self.theta(t.mul(e, f)) == a.mul(self.theta(e), self.theta(f)),
                    || vec![tn(e), tn(f)],
                );
            }
        }
        for s in t.elements() {
            for x in a.elements() {
                for y in a.elements() {
                    report.check(
                        "eta-endomorphism",
                        self.eta(s, a.mul(x, y)) == a.mul(self.eta(s, x), self.eta(s, y)),
                        || vec![tn(s), an(x), an(y)],
                    );
                }
                for u in t.elements() {
                    report.check(
                        "eta-homomorphism",
                        self.eta(t.mul(s, u), x) == self.eta(s, self.eta(u, x)),
                        || vec![tn(s), tn(u), an(x)],
                    );
                }
                if t.is_idempotent(s) {
                    report.check("TM1", self.eta(s, x) == a.mul(self.theta(s), x), || {
                        vec![tn(s), an(x)]
                    });
                }
                let si = t.inv(s);
                report.check(
                    "relative-inverse-left",
                    self.eta(si, self.eta(s, x)) == a.mul(self.theta(t.dom(s)), x),
                    || vec![tn(s), an(x)],
                );
                report.check(
                    "relative-inverse-right",
                    self.eta(s, self.eta(si, x)) == a.mul(self.theta(t.ran(s)), x),
                    || vec![tn(s), an(x)],
                );
            }
            for &e in t.idempotents() {
                let conj = t.mul(t.mul(s, e), t.inv(s));
                report.check(
                    "TM2",
                    self.eta(s, self.theta(e)) == self.theta(conj),
                    || vec![tn(s), tn(e)],
                );
            }
        }
        report
    }
}
