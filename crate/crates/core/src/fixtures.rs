//! Small named instances used by tests, the CLI and the acceptance suite.

use crate::semigroup::FiniteInverseSemigroup;
use crate::tmodule::{SemilatticeOfAbelianGroups, TModule};

/// Z_n with elements named `0..n`; id `k` is the residue `k`.
pub fn cyclic(n: usize) -> FiniteInverseSemigroup {
    let names = (0..n).map(|k| k.to_string()).collect();
    FiniteInverseSemigroup::from_fn(names, |x, y| (x + y) % n).expect("cyclic group")
}

/// Z₂ = {1, g}.
pub fn z2() -> FiniteInverseSemigroup {
    FiniteInverseSemigroup::from_fn(vec!["1".into(), "g".into()], |x, y| x ^ y).expect("Z2")
}

/// The two-element chain {e > f}; e is the identity.
pub fn chain2() -> FiniteInverseSemigroup {
    FiniteInverseSemigroup::from_fn(vec!["e".into(), "f".into()], |x, y| x.max(y)).expect("2-chain")
}

/// Z₂ × {e > f}, a Clifford F-inverse monoid.
pub fn z2_chain2() -> FiniteInverseSemigroup {
    z2().direct_product(&chain2())
}

/// Partial bijections of {1, 2} under composition (apply left factor first).
pub fn symmetric_inverse_monoid2() -> FiniteInverseSemigroup {
    // each map is [image of 1, image of 2], 0 meaning undefined
    let maps: [([usize; 2], &str); 7] = [
        ([0, 0], "0"),
        ([1, 0], "1>1"),
        ([0, 2], "2>2"),
        ([2, 0], "1>2"),
        ([0, 1], "2>1"),
        ([1, 2], "id"),
        ([2, 1], "(12)"),
    ];
    let compose = |p: [usize; 2], q: [usize; 2]| {
        let step = |x: usize| if x == 0 { 0 } else { q[x - 1] };
        [step(p[0]), step(p[1])]
    };
    let names = maps.iter().map(|(_, n)| n.to_string()).collect();
    FiniteInverseSemigroup::from_fn(names, |x, y| {
        let c = compose(maps[x].0, maps[y].0);
        maps.iter().position(|(m, _)| *m == c).expect("closed")
    })
    .expect("symmetric inverse monoid")
}

/// Z₂ acting trivially on Z₂ = {1, a}.
pub fn z2_trivial_module() -> TModule {
    let t = z2();
    let a = SemilatticeOfAbelianGroups::new(
        FiniteInverseSemigroup::from_fn(vec!["1".into(), "a".into()], |x, y| x ^ y).expect("Z2"),
    )
    .expect("abelian");
    TModule::new(t, a, vec![Some(0), None], vec![vec![0, 1], vec![0, 1]]).expect("module")
}

/// Over the 2-chain: A_e = Z₂ = {1_e, a}, A_f = {1_f}, η_t(x) = θ(t)x.
pub fn chain2_module() -> TModule {
    let t = chain2();
    // ids: 0 = 1_e, 1 = a, 2 = 1_f
    let a =
        SemilatticeOfAbelianGroups::new(
            FiniteInverseSemigroup::from_fn(
                vec!["1_e".into(), "a".into(), "1_f".into()],
                |x, y| if x == 2 || y == 2 { 2 } else { x ^ y },
            )
            .expect("semilattice of groups"),
        )
        .expect("abelian");
    let theta = vec![Some(0), Some(2)];
    let eta = vec![vec![0, 1, 2], vec![2, 2, 2]];
    TModule::new(t, a, theta, eta).expect("module")
}

/// Over Z₂ × {e > f}: A = Z₂ × {e > f} with η_t(x) = θ(tt⁻¹)x.
pub fn z2_chain2_module() -> TModule {
    let t = z2_chain2();
    let coeffs = FiniteInverseSemigroup::from_fn(vec!["1".into(), "a".into()], |x, y| x ^ y)
        .expect("Z2")
        .direct_product(&chain2());
    let a = SemilatticeOfAbelianGroups::new(coeffs).expect("abelian");
    // both factors are laid out identically, so the identity map on ids is θ on idempotents
    let theta = t
        .elements()
        .map(|s| t.is_idempotent(s).then_some(s))
        .collect();
    let eta = t
        .elements()
        .map(|s| a.elements().map(|x| a.mul(t.ran(s), x)).collect())
        .collect();
    TModule::new(t, a, theta, eta).expect("module")
}

/// E(T) acted on by conjugation, T the symmetric inverse monoid on {1, 2}.
pub fn symmetric_inverse_monoid2_module() -> TModule {
    let t = symmetric_inverse_monoid2();
    let es = t.idempotents().to_vec();
    let position = |s: usize| es.iter().position(|&e| e == s);
    let e_t = FiniteInverseSemigroup::from_fn(
        es.iter().map(|&e| t.name(e).to_string()).collect(),
        |x, y| position(t.mul(es[x], es[y])).expect("E(T) is closed"),
    )
    .expect("semilattice");
    let a = SemilatticeOfAbelianGroups::new(e_t).expect("semilattice");
    let theta = t.elements().map(position).collect();
    let eta = t
        .elements()
        .map(|s| {
            (0..es.len())
                .map(|x| position(t.mul(t.mul(s, es[x]), t.inv(s))).expect("idempotent"))
                .collect()
        })
        .collect();
    TModule::new(t, a, theta, eta).expect("module")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(z2().len(), 2);
        assert_eq!(chain2().len(), 2);
        assert_eq!(z2_chain2().len(), 4);
        assert_eq!(symmetric_inverse_monoid2().len(), 7);
        assert_eq!(cyclic(4).len(), 4);
    }

    #[test]
    fn fixture_modules_validate() {
        for m in [z2_trivial_module(), chain2_module(), z2_chain2_module()] {
            let report = m.validate();
            assert!(report.is_ok(), "{report:?}");
        }
    }
}
