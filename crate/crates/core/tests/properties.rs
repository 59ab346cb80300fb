use proptest::prelude::*;

use isgcoh::cochain::Cochain;
use isgcoh::cohomology::{cohomology_witness, CochainSpace, EnumerationConfig, Subcomplex};
use isgcoh::correspondence::{check_tau_laws, strongly_normalized_representatives, TauContext};
use isgcoh::cover::{build_extension_from_cocycle, check_cover_laws, Mode};
use isgcoh::crossed::{check_extension, induced_tmodule, SamplerConfig};
use isgcoh::extraction::{
    canonical_cover_transversals, extract_cocycle, transversal_change_witness, TransversalKind,
};
use isgcoh::fixtures;
use isgcoh::tmodule::TModule;

fn sampler(seed: u64) -> SamplerConfig {
    SamplerConfig {
        seed,
        max_word_len: 3,
        samples: 150,
    }
}

fn module(which: usize) -> TModule {
    match which {
        0 => fixtures::z2_trivial_module(),
        1 => fixtures::chain2_module(),
        _ => fixtures::z2_chain2_module(),
    }
}

fn ordered_two_cochains(m: &TModule) -> Vec<Cochain> {
    CochainSpace::new(m, 2, Subcomplex::OrderPreserving)
        .unwrap()
        .members(&EnumerationConfig::default())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cover_laws_hold_for_every_seed(seed in any::<u64>(), which in 0usize..3) {
        let m = module(which);
        let report = check_cover_laws(m.base(), &sampler(seed));
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn coboundary_twist_is_detected(which in 0usize..3, pick in any::<prop::sample::Index>(), rep in any::<prop::sample::Index>()) {
        let m = module(which);
        let cfg = EnumerationConfig::default();
        let reps = strongly_normalized_representatives(&m, &cfg).unwrap();
        let c = &reps[rep.index(reps.len())];
        let ds = ordered_two_cochains(&m);
        let d = &ds[pick.index(ds.len())];
        let twisted = m.mul_cochains(c, &m.coboundary(d).unwrap()).unwrap();
        let (witness, _) = cohomology_witness(&m, &twisted, c, &cfg).unwrap().expect("cohomologous");
        prop_assert_eq!(m.mul_cochains(&m.coboundary(&witness).unwrap(), c).unwrap(), twisted);
    }

    #[test]
    fn extensions_of_representatives(seed in any::<u64>(), which in 0usize..3, rep in any::<prop::sample::Index>()) {
        let m = module(which);
        let reps = strongly_normalized_representatives(&m, &EnumerationConfig::default()).unwrap();
        let c = &reps[rep.index(reps.len())];
        let ext = build_extension_from_cocycle(&m, c, Mode::Checked).unwrap();
        let cfg = sampler(seed);
        let report = check_extension(&ext, &cfg);
        prop_assert!(report.is_ok(), "{:?}", report.violations);
        prop_assert_eq!(&induced_tmodule(&ext, &cfg).unwrap(), &m);
        let plain = canonical_cover_transversals(&ext, TransversalKind::Plain).unwrap();
        prop_assert_eq!(&extract_cocycle(&ext, &m, &plain).unwrap(), c);
        if m.base().is_f_inverse_monoid() {
            let fin = canonical_cover_transversals(&ext, TransversalKind::FInverse).unwrap();
            let c_prime = extract_cocycle(&ext, &m, &fin).unwrap();
            let w = transversal_change_witness(&ext, &m, &plain, &fin).unwrap();
            prop_assert_eq!(m.mul_cochains(c, &m.coboundary(&w).unwrap()).unwrap(), c_prime);
        }
        prop_assert_eq!(ext.action().stats().lambda_mismatches, 0);
    }

    #[test]
    fn tau_laws_for_normalized_witnesses(seed in any::<u64>(), which in 0usize..3, pick in any::<prop::sample::Index>()) {
        let m = module(which);
        let ds: Vec<Cochain> = ordered_two_cochains(&m)
            .into_iter()
            .filter(|d| m.is_strongly_normalized(d) && m.is_order_preserving(d))
            .collect();
        let d = &ds[pick.index(ds.len())];
        let ctx = TauContext::new(m.base(), m.coefficients().semigroup().clone(), |e| m.theta(e), |x, y| d.get(&[x, y]));
        let report = check_tau_laws(&ctx, &sampler(seed));
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }
}
