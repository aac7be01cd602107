use cubic_core::experiments::{kummer_histogram, KummerInterval};
use cubic_core::gauss::prime_sweep;
use cubic_core::store::{ExportFormat, GaussCache, ReportEnvelope, Table, export_table};
use cubic_core::{
    cubic_symbol, factor, gauss_sum_direct, gtilde, primary_normalize, CubicValue, EisensteinInt, GaussTable,
};
use proptest::prelude::*;

fn primary(max: i128) -> impl Strategy<Value = EisensteinInt> {
    (-max..=max, -max..=max).prop_map(|(a, b)| EisensteinInt::new(1 + 3 * a, 3 * b))
}

fn mul(x: CubicValue, y: CubicValue) -> CubicValue {
    match (x.exponent(), y.exponent()) {
        (Some(i), Some(j)) => CubicValue::from_exponent(i as i64 + j as i64),
        _ => CubicValue::Zero,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_reassembles(c in primary(60)) {
        let f = factor(c).unwrap();
        prop_assert_eq!(f.reassemble(), c);
        let norm: i128 = f.factors.iter().map(|(p, e)| p.norm().pow(*e)).product();
        prop_assert_eq!(norm, c.norm());
    }

    #[test]
    fn symbol_is_multiplicative_in_the_numerator(
        a in (-500i128..500, -500i128..500),
        b in (-500i128..500, -500i128..500),
        c in primary(200),
    ) {
        let (a, b) = (EisensteinInt::new(a.0, a.1), EisensteinInt::new(b.0, b.1));
        prop_assert_eq!(cubic_symbol(a * b, c).unwrap(), mul(cubic_symbol(a, c).unwrap(), cubic_symbol(b, c).unwrap()));
    }

    #[test]
    fn symbol_depends_on_the_residue_only(a in (-500i128..500, -500i128..500), k in (-20i128..20, -20i128..20), c in primary(100)) {
        let a = EisensteinInt::new(a.0, a.1);
        let shifted = a + c * EisensteinInt::new(k.0, k.1);
        prop_assert_eq!(cubic_symbol(a, c).unwrap(), cubic_symbol(shifted, c).unwrap());
    }

    #[test]
    fn normalized_sums_have_unit_modulus_or_vanish(c in primary(25)) {
        let direct = gauss_sum_direct(c, EisensteinInt::ONE).unwrap().value;
        if factor(c).unwrap().is_squarefree() {
            prop_assert!((direct.norm() - 1.0).abs() < 1e-9);
            prop_assert!((gtilde(c).unwrap().value - direct).norm() < 1e-9);
        } else {
            prop_assert!(direct.norm() < 1e-9);
        }
    }

    #[test]
    fn associates_share_a_primary_form(c in primary(100), k in 0u32..6) {
        let unit = cubic_core::OMEGA.pow(k) * if k % 2 == 0 { EisensteinInt::ONE } else { EisensteinInt::new(-1, 0) };
        prop_assert_eq!(primary_normalize(unit * c).unwrap().1, c);
    }
}

#[test]
fn table_agrees_with_direct_sums() {
    let table = GaussTable::build(3000).unwrap();
    for c in cubic_core::enumerate_primary(0, 3000, cubic_core::Predicate::Squarefree) {
        let direct = gauss_sum_direct(c, EisensteinInt::ONE).unwrap().value;
        assert!((table.gtilde(c).unwrap() - direct).norm() < 1e-9, "{c}");
    }
}

#[test]
fn cache_reproduces_a_fresh_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gauss.csv");
    let fresh = prime_sweep(20_000).unwrap();
    let mut cache = GaussCache::open(&path).unwrap();
    assert_eq!(cache.sweep(5_000).unwrap(), fresh.iter().copied().take_while(|r| r.p <= 5_000).collect::<Vec<_>>());
    let mut reopened = GaussCache::open(&path).unwrap();
    let warm = reopened.sweep(20_000).unwrap();
    assert_eq!(warm.len(), fresh.len());
    for (w, f) in warm.iter().zip(&fresh) {
        assert_eq!((w.p, w.pi), (f.p, f.pi));
        assert!((w.value - f.value).norm() < 1e-15);
    }
}

#[test]
fn kummer_table_round_trips_through_csv() {
    let h = kummer_histogram(2000).unwrap();
    let table = Table::from_kummer(&h);
    let env = ReportEnvelope::new("kummer", serde_json::json!({ "x": 2000 }), &h, vec![], 0.0).unwrap();
    let mut buf = Vec::new();
    export_table(&env, &table, ExportFormat::Csv, &mut buf).unwrap();
    let back = Table::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back, table);
    let counted = h.angles.iter().filter(|a| KummerInterval::of(a.cos2pitheta) == KummerInterval::I1).count();
    assert_eq!(counted as u64, h.counts[0]);
}
