use fusionkit::adjoint_rules::{
    decompose, decompose_tensor, offdiag_fusion, offdiag_fusion_universal, offdiag_tensor,
    ConditionTable,
};
use fusionkit::oracle::{kac_walton_fusion, racah_speiser_tensor};
use fusionkit::weights::{
    affinize, enumerate_level, level_stats, level_stats_parallel, AffineWeight,
};
use fusionkit::{AlgebraId, RootSystem, Weight};
use proptest::prelude::*;

const ALGEBRAS: [&str; 10] = ["A1", "A3", "B3", "C2", "C3", "D4", "G2", "F4", "B4", "A4"];

fn algebra() -> impl Strategy<Value = AlgebraId> {
    prop::sample::select(ALGEBRAS.to_vec()).prop_map(|n| n.parse().unwrap())
}

/// An algebra, a level in 2..=9 and a uniformly chosen integrable weight.
fn affine_point() -> impl Strategy<Value = (AlgebraId, u64, Vec<i64>)> {
    (algebra(), 2u64..=9, any::<prop::sample::Index>()).prop_map(|(id, k, pick)| {
        let rs = RootSystem::shared(id).unwrap();
        let all: Vec<Vec<i64>> = enumerate_level(&rs, k)
            .map(|w| w.labels().to_vec())
            .collect();
        (id, k, pick.get(&all).clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rules_match_oracle((id, k, labels) in affine_point()) {
        let rs = RootSystem::shared(id).unwrap();
        let mu = AffineWeight::from_labels(&rs, labels).unwrap();
        prop_assert_eq!(decompose(&rs, &mu).unwrap(), kac_walton_fusion(&rs, &mu).unwrap());
        prop_assert_eq!(mu.level(), k);
    }

    #[test]
    fn tensor_rules_match_oracle(id in algebra(), raw in prop::collection::vec(0i64..4, 4)) {
        let rs = RootSystem::shared(id).unwrap();
        let mu = Weight::new(raw[..rs.rank()].to_vec());
        prop_assert_eq!(decompose_tensor(&rs, &mu).unwrap(), racah_speiser_tensor(&rs, &mu).unwrap());
    }

    #[test]
    fn offdiag_forms_agree((id, k, labels) in affine_point()) {
        let rs = RootSystem::shared(id).unwrap();
        let table = ConditionTable::new(&rs);
        let mu = AffineWeight::from_labels(&rs, labels).unwrap();
        for root in rs.roots() {
            let nu = mu.finite().add(&root.to_weight());
            let Ok(nu_hat) = affinize(&rs, &nu, k) else { continue };
            let fusion = offdiag_fusion(&rs, &mu, &nu_hat).unwrap();
            prop_assert_eq!(fusion, offdiag_fusion_universal(&rs, &mu, &nu_hat).unwrap());
            prop_assert_eq!(offdiag_tensor(&rs, &mu.finite(), &nu), table.offdiag(&rs, &mu.finite(), &nu));
            prop_assert!(fusion <= offdiag_tensor(&rs, &mu.finite(), &nu));
        }
    }

    #[test]
    fn truncation_bounds_fusion((id, k, labels) in affine_point()) {
        let rs = RootSystem::shared(id).unwrap();
        let mu = AffineWeight::from_labels(&rs, labels).unwrap();
        let fused = decompose(&rs, &mu).unwrap();
        let tensor = decompose_tensor(&rs, &mu.finite()).unwrap();
        for (w, m) in fused.iter() {
            prop_assert!(m <= tensor.get(w));
            prop_assert!(rs.theta_pairing(w) as u64 <= k);
        }
    }

    #[test]
    fn parallel_stats_match_serial(id in algebra(), k in 0u64..=12) {
        let rs = RootSystem::shared(id).unwrap();
        prop_assert_eq!(
            level_stats(rs.finite_comarks(), k).unwrap(),
            level_stats_parallel(rs.finite_comarks(), k).unwrap()
        );
    }
}
