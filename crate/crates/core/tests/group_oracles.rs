//! For a finite cyclic group acting on a cyclic group, the inverse semigroup
//! complex is the ordinary group complex, so the classical formulas apply:
//! trivial action gives Hⁿ(Z_k, Z_m) ≅ Z_gcd(k,m) for n ≥ 1, and the sign
//! action of Z₂ on Z_m gives A^G/NA in even and ker N/(σ−1)A in odd degrees.

use isgcoh::cohomology::{cohomology, EnumerationConfig, Subcomplex};
use isgcoh::fixtures::cyclic;
use isgcoh::tmodule::{SemilatticeOfAbelianGroups, TModule};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cyclic_module(k: usize, m: usize, sign: bool) -> TModule {
    let a = SemilatticeOfAbelianGroups::new(cyclic(m)).unwrap();
    let eta = (0..k)
        .map(|t| {
            (0..m)
                .map(|x| if sign && t % 2 == 1 { (m - x) % m } else { x })
                .collect()
        })
        .collect();
    let mut theta = vec![None; k];
    theta[0] = Some(0);
    TModule::new(cyclic(k), a, theta, eta).unwrap()
}

fn order(m: &TModule, n: usize) -> usize {
    let r = cohomology(m, n, Subcomplex::Full, &EnumerationConfig::default()).unwrap();
    assert!(!r.unquotiented || n == 1);
    r.order
}

#[test]
fn trivial_action_matches_gcd() {
    for (k, m, n) in [
        (2, 2, 2),
        (2, 3, 2),
        (2, 4, 2),
        (3, 3, 2),
        (3, 2, 2),
        (2, 3, 3),
        (2, 4, 3),
        (2, 2, 4),
    ] {
        assert_eq!(
            order(&cyclic_module(k, m, false), n),
            gcd(k, m),
            "H^{n}(Z{k}, Z{m})"
        );
    }
}

#[test]
fn sign_action_of_z2() {
    // Z₃ with inversion: fixed points and norm-kernel are both trivial
    assert_eq!(order(&cyclic_module(2, 3, true), 2), 1);
    assert_eq!(order(&cyclic_module(2, 3, true), 3), 1);
    // Z₄ with inversion: A^G = {0, 2}, NA = 0 and ker N/(σ−1)A = Z₄/2Z₄
    assert_eq!(order(&cyclic_module(2, 4, true), 2), 2);
    assert_eq!(order(&cyclic_module(2, 4, true), 3), 2);
}

#[test]
fn order_preserving_subcomplex_is_everything_for_groups() {
    let m = cyclic_module(2, 4, false);
    let cfg = EnumerationConfig::default();
    let full = cohomology(&m, 3, Subcomplex::Full, &cfg).unwrap();
    let ordered = cohomology(&m, 3, Subcomplex::OrderPreserving, &cfg).unwrap();
    assert_eq!(full.order, ordered.order);
    assert_eq!(full.cocycles, ordered.cocycles);
}
