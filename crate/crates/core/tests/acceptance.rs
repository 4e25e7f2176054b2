//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::{brute_pseudoheight, cofactor_det, ldl_signature, preserves_form, random_model, random_table, random_token, MukaiOracle, Mv};
use mukai_lattice::lattice::SublatticeSpan;
use mukai_lattice::pseudoheight::ExtDegreeTable;
use mukai_lattice::scenarios::{middle_cohomology_correspondence, ForbiddenLatticeCatalog, EXCLUDED_PERIOD_DISCRIMINANTS};
use mukai_lattice::{
    build_named, build_word, connectedness_verdict, cyclic_cohomology, pseudoheight, run_scenario, solve_wall_equation,
    AbelianGroupModel, Degree, IntLattice, IntMatrix, K3Model, LatticeVector, MukaiIsometry, MukaiVector, Signature,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(what: &str, expected: T, actual: T) -> Outcome {
    ensure(expected == actual, || format!("{what}: expected {expected:?}, got {actual:?}"))
}

fn scenario_passes(name: &str) -> Outcome {
    let r = run_scenario(name).map_err(|e| e.to_string())?;
    ensure(r.verdict, || format!("{name} failed:\n{r}"))
}

fn lift(v: &MukaiVector) -> LatticeVector {
    LatticeVector::new(v.coords())
}

fn to_oracle(v: &MukaiVector) -> Mv {
    let c = v.coords();
    let n = c.len();
    let i = |x: &BigInt| i64::try_from(x).unwrap();
    (i(&c[0]), c[1..n - 1].iter().map(i).collect(), i(&c[n - 1]))
}

fn criterion_1() -> Outcome {
    let model = Arc::new(K3Model::quartic_branch());
    let phi = build_word(model.clone(), "tw:O lb:A").map_err(|e| e.to_string())?;
    let oracle = MukaiOracle { pic: vec![vec![4]] };
    let o = oracle.line_bundle(&[0]);
    let expected = [((1, vec![-1], 1), (1, vec![0], -1)), ((1, vec![0], -1), (-1, vec![1], -1))];
    for (src, img) in expected {
        let by_hand = oracle.twist(&o, &oracle.tensor(&[1], &src));
        ensure_eq("oracle image", img.clone(), by_hand)?;
        let got = phi.apply(&MukaiVector::from_i64(src.0, &src.1, src.2)).map_err(|e| e.to_string())?;
        ensure_eq("Φ image", img, to_oracle(&got))?;
    }
    let residual = build_word(model.clone(), "shift tw:O lb:A tw:O lb:A").map_err(|e| e.to_string())?;
    let inv = residual.invariant_sublattice().map_err(|e| e.to_string())?;
    ensure_eq("invariant Gram determinant", BigInt::from(4), inv.as_lattice().determinant())?;
    ensure_eq("invariant signature", Signature::new(2, 0, 0), inv.as_lattice().signature())?;
    let basis = [MukaiVector::from_i64(1, &[-1], 1), MukaiVector::from_i64(1, &[0], -1)];
    ensure_eq("Gram", IntMatrix::from_i64(&[&[2, 0], &[0, 2]]), model.gram_matrix(&basis).map_err(|e| e.to_string())?)?;
    let target = SublatticeSpan::new(model.algebraic_mukai_lattice(), basis.iter().map(lift).collect()).map_err(|e| e.to_string())?;
    ensure(inv.same_subgroup(&target), || "invariant lattice differs from span{(1,-A,1),(1,0,-1)}".into())?;
    scenario_passes("S1_quartic_residual")
}

fn criterion_2() -> Outcome {
    let model = Arc::new(K3Model::gm_surface());
    let residual = build_word(model.clone(), "shift tw:U tw:O lb:B").map_err(|e| e.to_string())?;
    ensure(residual.is_involution(), || "residual generator is not an involution".into())?;
    let basis = [MukaiVector::from_i64(1, &[-1], 4), MukaiVector::from_i64(2, &[-1], 2)];
    let inv = residual.invariant_sublattice().map_err(|e| e.to_string())?;
    let target = SublatticeSpan::new(model.algebraic_mukai_lattice(), basis.iter().map(lift).collect()).map_err(|e| e.to_string())?;
    ensure(inv.same_subgroup(&target), || "invariant lattice differs from span{(1,-B,4),(2,-B,2)}".into())?;
    ensure_eq("Gram", IntMatrix::from_i64(&[&[2, 0], &[0, 2]]), model.gram_matrix(&basis).map_err(|e| e.to_string())?)?;
    scenario_passes("S2_gm_residual")
}

fn criterion_3() -> Outcome {
    let model = Arc::new(K3Model::quartic_with_line());
    let e = |r: Result<MukaiIsometry, mukai_lattice::Error>| r.map_err(|e| e.to_string());
    let lhs = e(build_word(model.clone(), "shift tw:O lb:D tw:O lb:D"))?;
    let phi_gm = e(build_word(model.clone(), "shift tw:U tw:O lb:D+E"))?;
    let psi = e(build_word(model.clone(), "tw:O(-D) lb:-E"))?;
    let rhs = e(e(e(build_word(model.clone(), "tw:O(-D) tw:O(-D)"))?.compose(&phi_gm))?.conjugate(&psi))?;
    ensure_eq("matrices", lhs.matrix(), rhs.matrix())?;
    ensure_eq("signs", (-1, -1), (lhs.transcendental_sign().as_i8(), rhs.transcendental_sign().as_i8()))?;
    let oracle = MukaiOracle { pic: vec![vec![4, 3], vec![3, 0]] };
    let o = oracle.line_bundle(&[0, 0]);
    let table: [(Mv, Mv); 4] = [
        ((1, vec![0, 0], 0), (-1, vec![1, 0], -2)),
        ((0, vec![1, 0], 0), (-4, vec![3, 0], -4)),
        ((0, vec![0, 1], 0), (-3, vec![3, -1], -3)),
        ((0, vec![0, 0], 1), (-2, vec![1, 0], -1)),
    ];
    for (src, img) in table {
        let once = |w: &Mv| oracle.twist(&o, &oracle.tensor(&[1, 0], w));
        ensure_eq("oracle image", img.clone(), oracle.shift(&once(&once(&src))))?;
        for f in [&lhs, &rhs] {
            let got = f.apply(&MukaiVector::from_i64(src.0, &src.1, src.2)).map_err(|e| e.to_string())?;
            ensure_eq("tabulated image", img.clone(), to_oracle(&got))?;
        }
    }
    scenario_passes("S3_conjugacy")
}

fn criterion_4() -> Outcome {
    let rows = [vec![2, 0, -1], vec![0, 2, -1], vec![-1, -1, 0]];
    let l = IntLattice::from_i64(&[&rows[0], &rows[1], &rows[2]], &[]);
    ensure_eq("det", BigInt::from(-4), l.determinant())?;
    ensure_eq("cofactor det", -4, cofactor_det(&rows))?;
    ensure_eq("signature", Signature::new(2, 1, 0), l.signature())?;
    ensure_eq("oracle signature", Signature::new(2, 1, 0), ldl_signature(&rows))?;
    let (sig, disc) = middle_cohomology_correspondence(&l).ok_or("correspondence does not apply")?;
    ensure_eq("K", (3, true, BigInt::from(4)), (sig.rank(), sig.is_positive_definite(), disc.clone()))?;
    ensure(EXCLUDED_PERIOD_DISCRIMINANTS.iter().any(|&d| BigInt::from(d) == disc), || "4 not excluded".into())?;
    let r = run_scenario("S4_ordinary_exclusion").map_err(|e| e.to_string())?;
    ensure(r.checks.iter().any(|c| c.actual == "contradiction" && c.pass), || "no contradiction reported".into())?;
    scenario_passes("S4_ordinary_exclusion")
}

fn criterion_5() -> Outcome {
    let mut positive = BTreeSet::new();
    for r in -10i64..=10 {
        let rows = [vec![2, 0, -1, -1], vec![0, 2, -2, -1], vec![-1, -2, 0, -r], vec![-1, -1, -r, 0]];
        let oracle = cofactor_det(&rows);
        // (r, D, 2r) on ⟨B, D⟩ with B.D = 1 − 6r, D² = 4r²
        let bd = 1 - 6 * r;
        let pic = IntLattice::from_i64(&[&[10, bd], &[bd, 4 * r * r]], &["B", "D"]);
        let model = K3Model::new("gm_r", pic.clone(), LatticeVector::from_i64(&[1, 0])).map_err(|e| e.to_string())?;
        let four = [
            MukaiVector::from_i64(1, &[-1, 0], 4),
            MukaiVector::from_i64(2, &[-1, 0], 2),
            MukaiVector::from_i64(0, &[0, 0], 1),
            MukaiVector::from_i64(r, &[0, 1], 2 * r),
        ];
        let g = model.gram_matrix(&four).map_err(|e| e.to_string())?;
        ensure_eq(&format!("r={r}: Gram"), IntMatrix::from_i64(&[&rows[0], &rows[1], &rows[2], &rows[3]]), g.clone())?;
        let det = g.determinant().map_err(|e| e.to_string())?;
        ensure_eq(&format!("r={r}: det vs cofactor"), BigInt::from(oracle), det.clone())?;
        ensure_eq(&format!("r={r}: closed form"), i128::from(-4 * r * r - 12 * r + 1), oracle)?;
        if oracle > 0 {
            positive.insert(r);
        }
    }
    ensure_eq("positive r", BTreeSet::from([-3, -2, -1, 0]), positive)?;
    // each positive r gives an isotropic class with B-pairing 1 or 3
    let catalog = ForbiddenLatticeCatalog::gm_k3();
    for (r, x, y) in [(0, 0, 1), (-1, 1, -1), (-2, -1, 1), (-3, 2, -1)] {
        let bd = 1 - 6 * r;
        let (bb, dd) = (10, 4 * r * r);
        let sq = x * x * bb + 2 * x * y * bd + y * y * dd;
        let bv = x * bb + y * bd;
        ensure_eq(&format!("r={r}: isotropic"), 0, sq)?;
        ensure(catalog.contains(&IntMatrix::from_i64(&[&[10, bv], &[bv, 0]])), || format!("r={r}: B-pairing {bv}"))?;
    }
    scenario_passes("S5_special_r_cases")
}

fn criterion_6() -> Outcome {
    let brute = |t: i64| -> Vec<(i64, i64)> {
        let mut v = Vec::new();
        for d in -50i64..=50 {
            for e in -50i64..=50 {
                if d != 0 && 4 * d * d + 6 * d * e == t {
                    v.push((d, e));
                }
            }
        }
        v
    };
    for t in [-6, -4] {
        ensure(solve_wall_equation(t).pairs.is_empty() && brute(t).is_empty(), || format!("target {t} has solutions"))?;
    }
    let expected = vec![(-4, 3), (-2, 2), (-1, 2), (1, -2), (2, -2), (4, -3)];
    ensure_eq("target -8", expected.clone(), solve_wall_equation(-8).pairs)?;
    ensure_eq("target -8 brute force", expected, brute(-8))?;
    scenario_passes("S6_wall_spherical")?;
    scenario_passes("S7_wall_semirigid")
}

fn criterion_7() -> Outcome {
    let pic = K3Model::quartic_with_line().picard().clone();
    let (e, de) = (LatticeVector::from_i64(&[0, 1]), LatticeVector::from_i64(&[1, -1]));
    let rays = pic.dual_cone_rank2([&e, &de]).map_err(|e| e.to_string())?;
    ensure_eq("nef rays", [LatticeVector::from_i64(&[0, 1]), LatticeVector::from_i64(&[3, -1])], rays.clone())?;
    for ray in &rays {
        for g in [&e, &de] {
            ensure(pic.pairing(ray, g).unwrap() >= BigInt::from(0), || "ray not dual".into())?;
        }
    }
    let h = LatticeVector::from_i64(&[1, 1]);
    ensure_eq("H²", BigInt::from(10), pic.square(&h).unwrap())?;
    let basis = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
    let he = pic.change_of_basis(&basis, None).map_err(|e| e.to_string())?;
    ensure_eq("(H, E) Gram", &IntMatrix::from_i64(&[&[10, 3], &[3, 0]]), he.gram())?;
    scenario_passes("S8_mori_nef")
}

fn criterion_8() -> Outcome {
    let model = K3Model::quartic_with_line();
    let oracle = MukaiOracle { pic: vec![vec![4, 3], vec![3, 0]] };
    let u: Mv = (2, vec![-1, -1], 3);
    ensure_eq("v(U)²", -2, oracle.pair(&u, &u))?;
    ensure_eq("library v(U)²", BigInt::from(-2), model.mukai_square(model.spherical_class("U").unwrap()).unwrap())?;
    for d in -10i64..=10 {
        let k: Mv = (2, vec![-1, -2], 3 - d);
        ensure_eq("v(K)²", 4 + 4 * d, oracle.pair(&k, &k))?;
        let lib = model.mukai_square(&MukaiVector::from_i64(2, &[-1, -2], 3 - d)).unwrap();
        ensure_eq("library v(K)²", BigInt::from(4 + 4 * d), lib)?;
    }
    let o_d = oracle.line_bundle(&[-1, 0]);
    // χ(v, w) = −(v, w)
    ensure_eq("χ(O(-D), U)", 2, -oracle.pair(&o_d, &u))?;
    let w: Mv = (3, vec![-2, -1], 6);
    ensure_eq("(3,-2D-E,6)²", -8, oracle.pair(&w, &w))?;
    let vs: Mv = (2, vec![-1, -2], 4);
    ensure_eq("χ(O(-D), V_s)", 0, -oracle.pair(&o_d, &vs))?;
    let lib_od = model.parse_vector("O(-D)").unwrap();
    let lib_u = model.spherical_class("U").unwrap();
    ensure_eq("library χ(O(-D), U)", BigInt::from(2), model.euler_characteristic(&lib_od, lib_u).unwrap())?;
    scenario_passes("S9_bundle_numerics")
}

fn criterion_9() -> Outcome {
    let units = AbelianGroupModel::field_units();
    let c = |m, n, a: &AbelianGroupModel| cyclic_cohomology(m, n, a).map(|h| h.to_string()).map_err(|e| e.to_string());
    ensure_eq("H³(Z/2, C^×)", "Z/2".to_string(), c(2, 3, &units)?)?;
    ensure_eq("H²(Z/2, C^×)", "0".to_string(), c(2, 2, &units)?)?;
    let laurent = units.direct_sum(&AbelianGroupModel::integers()).map_err(|e| e.to_string())?;
    for m in 2..=12 {
        for k in 1..=4 {
            ensure_eq(&format!("H^{}(Z/{m}, C^× ⊕ Z)", 2 * k), format!("Z/{m}"), c(m, 2 * k, &laurent)?)?;
        }
    }
    scenario_passes("S10_obstruction_groups")
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let t = random_table(&mut rng, n);
        ensure_eq(&format!("table {k} (n={n})"), brute_pseudoheight(&t), pseudoheight(&t))?;
    }
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(1..=6);
        let t = random_table(&mut rng, n);
        if t.validate_sheaf_mode().is_err() {
            continue;
        }
        checked += 1;
        let bound = Degree::Finite(i64::from(t.rel_dim()) - n as i64 + 1);
        let ph = pseudoheight(&t);
        ensure(ph >= bound, || format!("sheaf table with ph {ph} below {bound}"))?;
    }
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/fano_index_two.json")).map_err(|e| e.to_string())?;
    let t = ExtDegreeTable::from_json_str(&text).map_err(|e| e.to_string())?;
    let v = connectedness_verdict(pseudoheight(&t), t.rel_dim(), t.n());
    ensure(v.connected_by_criterion, || "Fano example not connected".into())?;
    scenario_passes("S12_pseudoheight_fano")
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut twists = 0;
    for k in 0..1000 {
        let model = random_model(&mut rng);
        let rho = model.picard_rank();
        let len = rng.gen_range(0..=8);
        let tokens: Vec<String> = (0..len).map(|_| random_token(&mut rng, rho)).collect();
        let phi = build_named(model.clone(), &tokens).map_err(|e| format!("word {k} {tokens:?}: {e}"))?;
        let g = model.algebraic_mukai_lattice().gram().to_rows();
        ensure(preserves_form(&phi.matrix().to_rows(), &g), || format!("word {k} {tokens:?} breaks the form"))?;
        for t in tokens.iter().filter(|t| t.starts_with("tw:")) {
            let tw = build_named(model.clone(), &[t]).map_err(|e| e.to_string())?;
            let sq = tw.compose(&tw).map_err(|e| e.to_string())?;
            ensure(sq.is_identity(), || format!("twist {t} does not square to the identity"))?;
            twists += 1;
        }
    }
    ensure(twists > 0, || "no twists sampled".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 quartic residual action and invariant lattice", criterion_1),
        ("2 GM residual invariant lattice", criterion_2),
        ("3 composite isometries agree", criterion_3),
        ("4 ordinary exclusion", criterion_4),
        ("5 rank-4 determinant family", criterion_5),
        ("6 wall equation solution sets", criterion_6),
        ("7 nef cone and degree-10 basis", criterion_7),
        ("8 bundle numerics", criterion_8),
        ("9 obstruction groups", criterion_9),
        ("10 pseudoheight properties", criterion_10),
        ("11 isometry properties", criterion_11),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{}/11 criteria pass in {:.2?}", 11 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
