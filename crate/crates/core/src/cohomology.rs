//! Cohomology of finite T-modules by exhaustive enumeration.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{decode_tuple, encode_tuple, tuple_count, Cochain, CochainError};
use crate::tmodule::TModule;

pub const DEFAULT_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcomplex {
    Full,
    OrderPreserving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub budget: u128,
    /// Worker threads for enumeration; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

impl EnumerationConfig {
    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}

/// A lexicographically indexed family of candidate cochains.
///
/// For the full complex every tuple is free. For the order-preserving
/// subcomplex only tuples of maximal elements are free; every other tuple `x`
/// is set to θ(r(x₁⋯xₙ))·c(y) for a fixed maximal tuple `y ≥ x`, and
/// candidates are then filtered by the monotonicity check.
pub struct CochainSpace<'a> {
    module: &'a TModule,
    degree: usize,
    kind: Subcomplex,
    free: Vec<usize>,
    choices: Vec<Vec<usize>>,
    derived: Vec<(usize, usize)>,
    size: u128,
}

impl<'a> CochainSpace<'a> {
    pub fn new(module: &'a TModule, degree: usize, kind: Subcomplex) -> Result<Self, CochainError> {
        if degree == 0 {
            return Err(CochainError::DegreeOutOfRange(0));
        }
        let t = module.base();
        let order = t.len();
        let maximal = t.maximal_elements();
        let above: Vec<usize> = t
            .elements()
            .map(|x| {
                *maximal
                    .iter()
                    .find(|&&m| t.leq(x, m))
                    .expect("finite order")
            })
            .collect();
        let mut free = Vec::new();
        let mut derived = Vec::new();
        let mut tuple = vec![0; degree];
        for idx in 0..tuple_count(order, degree) {
            decode_tuple(order, degree, idx, &mut tuple);
            let is_free = kind == Subcomplex::Full || tuple.iter().all(|&x| above[x] == x);
            if is_free {
                free.push(idx);
            } else {
                let top: Vec<usize> = tuple.iter().map(|&x| above[x]).collect();
                derived.push((idx, encode_tuple(order, &top)));
            }
        }
        let a = module.coefficients();
        let choices: Vec<Vec<usize>> = free
            .iter()
            .map(|&idx| {
                decode_tuple(order, degree, idx, &mut tuple);
                a.component(module.target(&tuple)).to_vec()
            })
            .collect();
        let size = choices
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .unwrap_or(u128::MAX);
        Ok(Self {
            module,
            degree,
            kind,
            free,
            choices,
            derived,
            size,
        })
    }

    /// Number of candidates (before the monotonicity filter).
    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn within(&self, budget: u128) -> Result<usize, CochainError> {
        if self.size > budget || self.size > usize::MAX as u128 {
            Err(CochainError::BudgetExceeded {
                size: self.size,
                budget,
            })
        } else {
            Ok(self.size as usize)
        }
    }

    /// Candidate number `index`; the last free slot varies fastest.
    pub fn candidate(&self, mut index: usize) -> Cochain {
        let t = self.module.base();
        let a = self.module.coefficients();
        let order = t.len();
        let mut values = vec![0; tuple_count(order, self.degree)];
        for (slot, &idx) in self.free.iter().enumerate().rev() {
            let c = &self.choices[slot];
            values[idx] = c[index % c.len()];
            index /= c.len();
        }
        let mut tuple = vec![0; self.degree];
        for &(idx, top) in &self.derived {
            decode_tuple(order, self.degree, idx, &mut tuple);
            values[idx] = a.mul(self.module.target(&tuple), values[top]);
        }
        Cochain::from_values(self.degree, order, values).expect("shape")
    }

    /// All members of the (sub)complex in candidate order.
    pub fn members(&self, cfg: &EnumerationConfig) -> Result<Vec<Cochain>, CochainError> {
        let size = self.within(cfg.budget)?;
        Ok(cfg.run(|| {
            (0..size)
                .into_par_iter()
                .filter_map(|i| {
                    let c = self.candidate(i);
                    (self.kind == Subcomplex::Full || self.module.is_order_preserving(&c))
                        .then_some(c)
                })
                .collect()
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub subcomplex: Subcomplex,
    /// Number of cochains enumerated in degree n.
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub order: usize,
    /// Least representative of each class, in lexicographic order.
    pub representatives: Vec<Cochain>,
    /// True in degree 1, where no coboundary subgroup is quotiented out.
    pub unquotiented: bool,
}

pub fn cocycles(
    module: &TModule,
    n: usize,
    kind: Subcomplex,
    cfg: &EnumerationConfig,
) -> Result<Vec<Cochain>, CochainError> {
    let space = CochainSpace::new(module, n, kind)?;
    let size = space.within(cfg.budget)?;
    Ok(cfg.run(|| {
        (0..size)
            .into_par_iter()
            .filter_map(|i| {
                let c = space.candidate(i);
                let admissible = kind == Subcomplex::Full || module.is_order_preserving(&c);
                (admissible && module.is_cocycle(&c)).then_some(c)
            })
            .collect()
    }))
}

pub fn coboundaries(
    module: &TModule,
    n: usize,
    kind: Subcomplex,
    cfg: &EnumerationConfig,
) -> Result<Vec<Cochain>, CochainError> {
    if n <= 1 {
        return Ok(vec![module.trivial_cochain(n.max(1))]);
    }
    let lower = CochainSpace::new(module, n - 1, kind)?.members(cfg)?;
    let images: Vec<Cochain> = cfg.run(|| {
        lower
            .par_iter()
            .map(|d| module.coboundary(d).expect("degree ≥ 1"))
            .collect()
    });
    let mut seen = HashSet::new();
    let mut distinct: Vec<Cochain> = images
        .into_iter()
        .filter(|c| seen.insert(c.clone()))
        .collect();
    distinct.sort();
    Ok(distinct)
}

pub fn cohomology(
    module: &TModule,
    n: usize,
    kind: Subcomplex,
    cfg: &EnumerationConfig,
) -> Result<CohomologyReport, CochainError> {
    let space = CochainSpace::new(module, n, kind)?;
    space.within(cfg.budget)?;
    let cochains = space.members(cfg)?.len();
    let mut zs = cocycles(module, n, kind, cfg)?;
    zs.sort();
    let bs = coboundaries(module, n, kind, cfg)?;
    let mut covered = HashSet::new();
    let mut representatives = Vec::new();
    for z in &zs {
        if covered.contains(z) {
            continue;
        }
        representatives.push(z.clone());
        for b in &bs {
            covered.insert(module.mul_cochains(z, b)?);
        }
    }
    Ok(CohomologyReport {
        degree: n,
        subcomplex: kind,
        cochains,
        cocycles: zs.len(),
        coboundaries: bs.len(),
        order: representatives.len(),
        representatives,
        unquotiented: n == 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRoute {
    /// Both cocycles normalize to the same cochain.
    Normalization,
    /// First hit of a lexicographic scan of order-preserving 2-cochains.
    Search,
    /// Assembled from the normalization witness and a change of transversal.
    TransversalChange,
}

/// Find order-preserving `d` with `c = δ²d · c′`, both being order-preserving 3-cocycles.
pub fn cohomology_witness(
    module: &TModule,
    c: &Cochain,
    c_prime: &Cochain,
    cfg: &EnumerationConfig,
) -> Result<Option<(Cochain, WitnessRoute)>, CochainError> {
    let target = module.mul_cochains(c, &module.inv_cochain(c_prime))?;
    let (nc, d1) = module.normalize_cocycle(c)?;
    let (nc2, d2) = module.normalize_cocycle(c_prime)?;
    if nc == nc2 {
        let d = module.mul_cochains(&d2, &module.inv_cochain(&d1))?;
        if module.coboundary(&d)? == target && module.is_order_preserving(&d) {
            return Ok(Some((d, WitnessRoute::Normalization)));
        }
    }
    let space = CochainSpace::new(module, 2, Subcomplex::OrderPreserving)?;
    let size = space.within(cfg.budget)?;
    let hit = cfg.run(|| {
        (0..size).into_par_iter().find_first(|&i| {
            let d = space.candidate(i);
            module.is_order_preserving(&d) && module.coboundary(&d).ok().as_ref() == Some(&target)
        })
    });
    Ok(hit.map(|i| (space.candidate(i), WitnessRoute::Search)))
}
