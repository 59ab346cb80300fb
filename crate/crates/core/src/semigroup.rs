//! Finite inverse semigroups given by multiplication tables.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("table is not square over {elements} elements (row {row} has {len} entries)")]
    Shape {
        elements: usize,
        row: usize,
        len: usize,
    },
    #[error("table has {rows} rows for {elements} elements")]
    RowCount { elements: usize, rows: usize },
    #[error("entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("not associative: ({x}{y}){z} != {x}({y}{z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("element {element} has {count} inverses")]
    NotInverse { element: String, count: usize },
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDoNotCommute(String, String),
    #[error("map has {got} entries, source has {expected} elements")]
    MapLength { expected: usize, got: usize },
    #[error("map value {value} at {element} is not a target element")]
    MapOutOfRange { element: String, value: usize },
    #[error("not a homomorphism at ({0}, {1})")]
    NotHomomorphism(String, String),
    #[error("invalid kernel system: {0}")]
    InvalidKernelSystem(String),
}

/// An inverse semigroup on the element ids `0..len()`.
///
/// Inverses, idempotents and the natural partial order are computed once on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    names: Vec<String>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    idempotent: Vec<bool>,
    idempotents: Vec<usize>,
    below: Vec<bool>,
    identity: Option<usize>,
}

impl FiniteInverseSemigroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let n = names.len();
        if table.len() != n {
            return Err(SemigroupError::RowCount {
                elements: n,
                rows: table.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(SemigroupError::Shape {
                    elements: n,
                    row,
                    len: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(SemigroupError::EntryOutOfRange { row, col, value });
                }
                flat.push(value);
            }
        }
        Self::from_flat(names, flat)
    }

    pub fn from_fn(
        names: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, SemigroupError> {
        let n = names.len();
        let table = (0..n)
            .map(|x| (0..n).map(|y| mul(x, y)).collect())
            .collect();
        Self::new(names, table)
    }

    fn from_flat(names: Vec<String>, table: Vec<usize>) -> Result<Self, SemigroupError> {
        let n = names.len();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(SemigroupError::DuplicateName(name.clone()));
            }
        }
        let mul = |x: usize, y: usize| table[x * n + y];
        for x in 0..n {
            for y in 0..n {
                let xy = mul(x, y);
                for z in 0..n {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(SemigroupError::NotAssociative {
                            x: names[x].clone(),
                            y: names[y].clone(),
                            z: names[z].clone(),
                        });
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for (s, name) in names.iter().enumerate() {
            let found: Vec<usize> = (0..n)
                .filter(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t)
                .collect();
            if found.len() != 1 {
                return Err(SemigroupError::NotInverse {
                    element: name.clone(),
                    count: found.len(),
                });
            }
            inverse.push(found[0]);
        }
        let idempotent: Vec<bool> = (0..n).map(|s| mul(s, s) == s).collect();
        let idempotents: Vec<usize> = (0..n).filter(|&s| idempotent[s]).collect();
        for &e in &idempotents {
            for &f in &idempotents {
                if mul(e, f) != mul(f, e) {
                    return Err(SemigroupError::IdempotentsDoNotCommute(
                        names[e].clone(),
                        names[f].clone(),
                    ));
                }
            }
        }
        let mut below = vec![false; n * n];
        for s in 0..n {
            let range = mul(s, inverse[s]);
            for t in 0..n {
                below[s * n + t] = mul(range, t) == s;
            }
        }
        let identity = (0..n).find(|&u| (0..n).all(|s| mul(u, s) == s && mul(s, u) == s));
        Ok(Self {
            names,
            table,
            inverse,
            idempotent,
            idempotents,
            below,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y]
    }

    /// Product of a nonempty sequence; `None` for the empty sequence.
    pub fn product(&self, xs: &[usize]) -> Option<usize> {
        let (&first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    #[inline]
    pub fn inv(&self, s: usize) -> usize {
        self.inverse[s]
    }

    #[inline]
    pub fn is_idempotent(&self, s: usize) -> bool {
        self.idempotent[s]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Domain idempotent s⁻¹s.
    #[inline]
    pub fn dom(&self, s: usize) -> usize {
        self.mul(self.inverse[s], s)
    }

    /// Range idempotent ss⁻¹.
    #[inline]
    pub fn ran(&self, s: usize) -> usize {
        self.mul(s, self.inverse[s])
    }

    /// Natural partial order.
    #[inline]
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.below[s * self.len() + t]
    }

    pub fn down_set(&self, t: usize) -> Vec<usize> {
        self.elements().filter(|&s| self.leq(s, t)).collect()
    }

    /// Elements with nothing strictly above them.
    pub fn maximal_elements(&self) -> Vec<usize> {
        self.elements()
            .filter(|&s| self.elements().all(|t| !self.leq(s, t) || s == t))
            .collect()
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|x| self.elements().map(|y| self.mul(x, y)).collect())
            .collect()
    }

    /// Group components `e ↦ {s | ss⁻¹ = s⁻¹s = e}` when every idempotent is
    /// central.
    pub fn clifford_components(&self) -> Option<BTreeMap<usize, Vec<usize>>> {
        let central = self
            .idempotents
            .iter()
            .all(|&e| self.elements().all(|s| self.mul(e, s) == self.mul(s, e)));
        if !central {
            return None;
        }
        let mut components: BTreeMap<usize, Vec<usize>> =
            self.idempotents.iter().map(|&e| (e, Vec::new())).collect();
        for s in self.elements() {
            components.get_mut(&self.ran(s))?.push(s);
        }
        Some(components)
    }

    /// F-inverse test. On success returns `max t` for every `t`.
    pub fn f_inverse_max(&self) -> Option<Vec<usize>> {
        self.identity?;
        let classes = self.sigma_classes();
        let mut max = vec![0; self.len()];
        for class in classes {
            let top = class
                .iter()
                .copied()
                .find(|&m| class.iter().all(|&s| self.leq(s, m)))?;
            for s in class {
                max[s] = top;
            }
        }
        Some(max)
    }

    pub fn is_f_inverse_monoid(&self) -> bool {
        self.f_inverse_max().is_some()
    }

    /// Connected components of "has a common lower bound".
    pub fn sigma_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for u in 0..n {
            for s in 0..n {
                if self.leq(u, s) {
                    let (a, b) = (root(&mut parent, u), root(&mut parent, s));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..n {
            let r = root(&mut parent, s);
            classes.entry(r).or_default().push(s);
        }
        classes.into_values().collect()
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let m = other.len();
        let names = self
            .elements()
            .flat_map(|x| other.elements().map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", self.name(x), other.name(y)))
            .collect();
        Self::from_fn(names, |p, q| {
            self.mul(p / m, q / m) * m + other.mul(p % m, q % m)
        })
        .expect("direct product of inverse semigroups is inverse")
    }
}

/// A homomorphism between finite inverse semigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupMorphism {
    source: FiniteInverseSemigroup,
    target: FiniteInverseSemigroup,
    map: Vec<usize>,
}

impl SemigroupMorphism {
    pub fn new(
        source: FiniteInverseSemigroup,
        target: FiniteInverseSemigroup,
        map: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        if map.len() != source.len() {
            return Err(SemigroupError::MapLength {
                expected: source.len(),
                got: map.len(),
            });
        }
        if let Some(s) = source.elements().find(|&s| map[s] >= target.len()) {
            return Err(SemigroupError::MapOutOfRange {
                element: source.name(s).to_string(),
                value: map[s],
            });
        }
        for s in source.elements() {
            for t in source.elements() {
                if map[source.mul(s, t)] != target.mul(map[s], map[t]) {
                    return Err(SemigroupError::NotHomomorphism(
                        source.name(s).to_string(),
                        source.name(t).to_string(),
                    ));
                }
            }
            debug_assert_eq!(map[source.inv(s)], target.inv(map[s]));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: &FiniteInverseSemigroup) -> Self {
        Self {
            source: s.clone(),
            target: s.clone(),
            map: s.elements().collect(),
        }
    }

    pub fn source(&self) -> &FiniteInverseSemigroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteInverseSemigroup {
        &self.target
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_idempotent_separating(&self) -> bool {
        let es = self.source.idempotents();
        es.iter()
            .enumerate()
            .all(|(i, &e)| es[i + 1..].iter().all(|&f| self.map[e] != self.map[f]))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// A conjugation-closed union of groups over all idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupKernelNormalSystem {
    ambient: FiniteInverseSemigroup,
    members: Vec<bool>,
}

impl GroupKernelNormalSystem {
    pub fn new(ambient: FiniteInverseSemigroup, carrier: &[usize]) -> Result<Self, SemigroupError> {
        let mut members = vec![false; ambient.len()];
        for &k in carrier {
            if k >= ambient.len() {
                return Err(SemigroupError::InvalidKernelSystem(format!(
                    "{k} is not an element"
                )));
            }
            members[k] = true;
        }
        let bad = |why: String| Err(SemigroupError::InvalidKernelSystem(why));
        for &e in ambient.idempotents() {
            if !members[e] {
                return bad(format!("idempotent {} missing", ambient.name(e)));
            }
        }
        for k in ambient.elements().filter(|&k| members[k]) {
            if ambient.ran(k) != ambient.dom(k) {
                return bad(format!("{} is not in a group component", ambient.name(k)));
            }
            for l in ambient.elements().filter(|&l| members[l]) {
                if !members[ambient.mul(k, l)] {
                    return bad(format!(
                        "not closed under product at ({}, {})",
                        ambient.name(k),
                        ambient.name(l)
                    ));
                }
            }
            for s in ambient.elements() {
                let conj = ambient.mul(ambient.mul(s, k), ambient.inv(s));
                if !members[conj] {
                    return bad(format!(
                        "not closed under conjugation of {} by {}",
                        ambient.name(k),
                        ambient.name(s)
                    ));
                }
            }
        }
        Ok(Self { ambient, members })
    }

    pub fn ambient(&self) -> &FiniteInverseSemigroup {
        &self.ambient
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members[s]
    }

    pub fn carrier(&self) -> Vec<usize> {
        self.ambient
            .elements()
            .filter(|&s| self.members[s])
            .collect()
    }

    /// Quotient by the idempotent-separating congruence
    /// `s ~ s'  iff  d(s) = d(s') and s⁻¹s' ∈ K`.
    ///
    /// Classes are represented by their least element id.
    pub fn quotient(&self) -> Result<(FiniteInverseSemigroup, SemigroupMorphism), SemigroupError> {
        let s = &self.ambient;
        let related = |x: usize, y: usize| s.dom(x) == s.dom(y) && self.members[s.mul(s.inv(x), y)];
        let mut class_of = vec![usize::MAX; s.len()];
        let mut reps = Vec::new();
        for x in s.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for y in s.elements() {
                if related(x, y) {
                    if class_of[y] != usize::MAX {
                        return Err(SemigroupError::InvalidKernelSystem(
                            "induced relation is not an equivalence".into(),
                        ));
                    }
                    class_of[y] = id;
                }
            }
        }
        for x in s.elements() {
            for y in s.elements() {
                if related(x, y) != (class_of[x] == class_of[y]) {
                    return Err(SemigroupError::InvalidKernelSystem(
                        "induced relation is not an equivalence".into(),
                    ));
                }
            }
        }
        for x in s.elements() {
            for y in s.elements() {
                let expect = class_of[s.mul(reps[class_of[x]], reps[class_of[y]])];
                if class_of[s.mul(x, y)] != expect {
                    return Err(SemigroupError::InvalidKernelSystem(format!(
                        "induced relation is not a congruence at ({}, {})",
                        s.name(x),
                        s.name(y)
                    )));
                }
            }
        }
        let names = reps.iter().map(|&r| format!("[{}]", s.name(r))).collect();
        let quotient =
            FiniteInverseSemigroup::from_fn(names, |p, q| class_of[s.mul(reps[p], reps[q])])?;
        let pi = SemigroupMorphism::new(s.clone(), quotient.clone(), class_of)?;
        Ok((quotient, pi))
    }
}
