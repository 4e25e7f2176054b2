use mukai_lattice::{cyclic_cohomology, AbelianGroupModel};
use num_integer::Integer;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = AbelianGroupModel> {
    (0u32..=2, prop::collection::vec(1u64..=30, 0..=3), any::<bool>())
        .prop_map(|(free, orders, units)| AbelianGroupModel::from_cyclic(free, &orders, units))
}

/// `|Z/m ⊗ Z/d| = gcd(m, d)`, so both torsion and cotorsion of a cyclic group have that order.
fn expected_order(m: u64, n: u32, a: &AbelianGroupModel) -> Option<u64> {
    let torsion: u64 = a.torsion().iter().map(|&d| d.gcd(&m)).product();
    let units = if a.divisible_units() { m } else { 1 };
    match n {
        0 => a.order(),
        _ if n % 2 == 1 => Some(torsion * units),
        _ => Some(torsion * m.pow(a.free_rank())),
    }
}

proptest! {
    #[test]
    fn two_periodic_in_positive_degree(m in 2i64..=40, n in 1u32..=6, a in group()) {
        prop_assert_eq!(cyclic_cohomology(m, n, &a).unwrap(), cyclic_cohomology(m, n + 2, &a).unwrap());
    }

    #[test]
    fn additive_over_direct_sums(m in 2i64..=40, n in 0u32..=5, a in group(), b in group()) {
        prop_assume!(!(a.divisible_units() && b.divisible_units()));
        let sum = a.direct_sum(&b).unwrap();
        let separate = cyclic_cohomology(m, n, &a).unwrap().direct_sum(&cyclic_cohomology(m, n, &b).unwrap()).unwrap();
        prop_assert_eq!(cyclic_cohomology(m, n, &sum).unwrap(), separate);
    }

    #[test]
    fn orders_match_counting_formula(m in 2u64..=50, n in 0u32..=5, a in group()) {
        let h = cyclic_cohomology(m as i64, n, &a).unwrap();
        prop_assert_eq!(h.order(), expected_order(m, n, &a));
    }

    #[test]
    fn display_round_trips(a in group()) {
        prop_assert_eq!(a.to_string().parse::<AbelianGroupModel>().unwrap(), a);
    }
}

#[test]
fn units_and_integers_for_every_small_modulus() {
    let laurent: AbelianGroupModel = "Cx+Z".parse().unwrap();
    let units = AbelianGroupModel::field_units();
    for m in 2..=50 {
        for n in 1..=6 {
            let (h, hu) = (cyclic_cohomology(m, n, &laurent).unwrap(), cyclic_cohomology(m, n, &units).unwrap());
            let cyclic = format!("Z/{m}");
            if n % 2 == 0 {
                assert_eq!((h.to_string(), hu.to_string()), (cyclic, "0".to_string()));
            } else {
                assert_eq!((h.to_string(), hu.to_string()), (cyclic.clone(), cyclic));
            }
        }
    }
}
