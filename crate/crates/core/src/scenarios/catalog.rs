use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    middle_cohomology_correspondence, solve_wall_equation, Checks, ForbiddenLatticeCatalog,
    EXCLUDED_PERIOD_DISCRIMINANTS,
};
use crate::cohomology::{cyclic_cohomology, AbelianGroupModel};
use crate::error::Result;
use crate::isometry::{build_word, MukaiIsometry};
use crate::lattice::{IntLattice, LatticeVector, SublatticeSpan};
use crate::matrix::IntMatrix;
use crate::mukai::{K3Model, MukaiVector};
use crate::pseudoheight::{connectedness_verdict, pseudoheight, Degree, ExtDegreeTable};

/// Bound on `|x|, |y|` when searching `⟨B, D⟩` for isotropic classes.
const ISOTROPIC_SEARCH_BOUND: i64 = 4;
/// Range of the integer parameter `r` swept for the rank-4 lattice.
const R_RANGE: std::ops::RangeInclusive<i64> = -10..=10;

fn vectors(model: &K3Model, texts: &[&str]) -> Result<Vec<MukaiVector>> {
    texts.iter().map(|t| model.parse_vector(t)).collect()
}

/// Checks that an involution has the expected invariant lattice with Gram `diag(2, 2)`.
fn check_invariants(c: &mut Checks, model: &K3Model, phi: &MukaiIsometry, expected: &[MukaiVector]) -> Result<()> {
    c.eq("residual action squares to the identity", true, phi.is_involution());
    let inv = phi.invariant_sublattice()?;
    let lattice = model.algebraic_mukai_lattice();
    let target = SublatticeSpan::new(lattice, expected.iter().map(|v| LatticeVector::new(v.coords())).collect())?;
    let names: Vec<String> = expected.iter().map(|v| model.format_vector(v)).collect();
    c.holds(
        "invariant lattice",
        format!("span{{{}}}", names.join(", ")),
        format!("HNF basis {}", inv.reduced().generator_matrix()),
        inv.same_subgroup(&target),
    );
    c.eq("Gram of the invariant basis", "(2, 0; 0, 2)", model.gram_matrix(expected)?);
    c.eq("invariant lattice determinant", 4, inv.as_lattice().determinant());
    let anti = phi.anti_invariant_sublattice()?;
    c.eq("anti-invariant rank in the algebraic lattice", lattice_rank(model) - 2, anti.rank());
    Ok(())
}

fn lattice_rank(model: &K3Model) -> usize {
    model.picard_rank() + 2
}

pub(super) fn quartic_residual(c: &mut Checks) -> Result<()> {
    let model = Arc::new(K3Model::quartic_branch());
    let phi = build_word(model.clone(), "tw:O lb:A")?;
    let v = vectors(&model, &["(1,-A,1)", "(1,0,-1)"])?;
    c.eq("Φ_Ybr = T_O ∘ ⊗O(A) sends (1, -A, 1)", "(1, 0, -1)", model.format_vector(&phi.apply(&v[0])?));
    c.eq("Φ_Ybr sends (1, 0, -1) to -(1, -A, 1)", "(-1, A, -1)", model.format_vector(&phi.apply(&v[1])?));
    let residual = build_word(model.clone(), "shift tw:O lb:A tw:O lb:A")?;
    c.eq("Φ_Ybr²[-1] transcendental sign", "-1", residual.transcendental_sign());
    check_invariants(c, &model, &residual, &v)
}

pub(super) fn gm_residual(c: &mut Checks) -> Result<()> {
    let model = Arc::new(K3Model::gm_surface());
    c.eq("v(U)", "(2, -B, 3)", model.format_vector(model.spherical_class("U").expect("registered")));
    let residual = build_word(model.clone(), "shift tw:U tw:O lb:B")?;
    let v = vectors(&model, &["(1,-B,4)", "(2,-B,2)"])?;
    for w in &v {
        c.eq(format!("residual generator fixes {}", model.format_vector(w)), model.format_vector(w), model.format_vector(&residual.apply(w)?));
    }
    check_invariants(c, &model, &residual, &v)
}

pub(super) fn conjugacy(c: &mut Checks) -> Result<()> {
    let model = Arc::new(K3Model::quartic_with_line());
    let lhs = build_word(model.clone(), "shift tw:O lb:D tw:O lb:D")?;
    let phi_gm = build_word(model.clone(), "shift tw:U tw:O lb:D+E")?;
    let psi = build_word(model.clone(), "tw:O(-D) lb:-E")?;
    let rhs = build_word(model.clone(), "tw:O(-D) tw:O(-D)")?.compose(&phi_gm)?.conjugate(&psi)?;
    let table = [
        ("(1,0,0)", "(-1, D, -2)"),
        ("(0,D,0)", "(-4, 3D, -4)"),
        ("(0,E,0)", "(-3, 3D-E, -3)"),
        ("(0,0,1)", "(-2, D, -1)"),
    ];
    for (side, f) in [("(T_O ∘ ⊗O(D))²[-1]", &lhs), ("Ψ⁻¹ ∘ T²_O(-D) ∘ Φ^GM ∘ Ψ", &rhs)] {
        for (source, image) in table {
            let v = model.parse_vector(source)?;
            c.eq(format!("{side} sends {}", model.format_vector(&v)), image, model.format_vector(&f.apply(&v)?));
        }
        c.eq(format!("{side} transcendental sign"), "-1", f.transcendental_sign());
    }
    c.holds("matrices coincide", lhs.matrix(), rhs.matrix(), lhs.matrix() == rhs.matrix());
    Ok(())
}

pub(super) fn ordinary_exclusion(c: &mut Checks) -> Result<()> {
    let model = K3Model::quartic_branch();
    let basis = vectors(&model, &["(1,-A,1)", "(1,0,-1)", "(0,0,1)"])?;
    let gram = model.gram_matrix(&basis)?;
    c.eq("Gram of L_Ybr", "(2, 0, -1; 0, 2, -1; -1, -1, 0)", &gram);
    let l = IntLattice::new(gram)?;
    c.eq("det L_Ybr", -4, l.determinant());
    c.eq("signature of L_Ybr", "(2, 1, 0)", l.signature());
    let span = SublatticeSpan::new(
        model.algebraic_mukai_lattice(),
        basis.iter().map(|v| LatticeVector::new(v.coords())).collect(),
    )?;
    c.eq("L_Ybr is primitive", true, span.is_primitive());
    let a1 = IntLattice::new(model.gram_matrix(&basis[..2])?)?;
    c.eq("L_Ybr contains A1⊕A1 on its first two vectors", "(2, 0; 0, 2)", a1.gram());
    match middle_cohomology_correspondence(&l) {
        Some((sig, disc)) => {
            c.eq("rank of K", 3, sig.rank());
            c.eq("K is positive definite", true, sig.is_positive_definite());
            c.eq("disc K = (-1)^3 disc L_Ybr", 4, &disc);
            let hit = EXCLUDED_PERIOD_DISCRIMINANTS.iter().any(|&d| BigInt::from(d) == disc);
            c.holds(
                "disc K lies in the excluded set {2, 4, 8}",
                "contradiction",
                if hit { "contradiction" } else { "no contradiction" },
                hit,
            );
        }
        None => c.holds("correspondence applies", "signature (p ≥ 2, q)", l.signature(), false),
    }
    Ok(())
}

/// The rank-4 Gram in the basis `(1,−B,4), (2,−B,2), (0,0,1), (r,D,s)`.
fn rank_four_gram(r: i64) -> IntMatrix {
    IntMatrix::from_i64(&[&[2, 0, -1, -1], &[0, 2, -2, -1], &[-1, -2, 0, -r], &[-1, -1, -r, 0]])
}

pub(super) fn special_r_cases(c: &mut Checks) -> Result<()> {
    let gm = K3Model::gm_surface();
    let l_xop = vectors(&gm, &["(1,-B,4)", "(2,-B,2)", "(0,0,1)"])?;
    c.eq("Gram of L_X^op", "(2, 0, -1; 0, 2, -2; -1, -2, 0)", gm.gram_matrix(&l_xop)?);

    let mut mismatches = Vec::new();
    let mut positive = BTreeSet::new();
    for r in R_RANGE {
        let det = rank_four_gram(r).determinant()?;
        if det != BigInt::from(-4 * r * r - 12 * r + 1) {
            mismatches.push(format!("r={r}: {det}"));
        }
        if det.is_positive() {
            positive.insert(r);
        }
    }
    c.holds(
        "det = -4r² - 12r + 1 for r in [-10, 10]",
        "all 21 values agree",
        if mismatches.is_empty() { "all 21 values agree".to_string() } else { mismatches.join("; ") },
        mismatches.is_empty(),
    );
    c.eq("r with positive discriminant", "{-3, -2, -1, 0}", format_set(&positive));

    let catalog = ForbiddenLatticeCatalog::gm_k3();
    let isotropic_class = [(0, "D"), (-1, "B-D"), (-2, "D-B"), (-3, "2B-D")];
    for (r, expected_class) in isotropic_class {
        // (r, D, s) pairs to −1 with (1,−B,4) and (2,−B,2):
        // −B·D − s − 4r = −1 and −B·D − 2s − 2r = −1
        let s = 2 * r;
        let bd = 1 - s - 4 * r;
        c.eq(format!("r={r}: B.D"), 1 - 6 * r, bd);
        c.eq(format!("r={r}: second equation"), -1, -bd - 2 * s - 2 * r);
        let d2 = 2 * r * s;
        let pic = IntLattice::from_i64(&[&[10, bd], &[bd, d2]], &["B", "D"]);
        c.eq(format!("r={r}: Picard Gram of ⟨B, D⟩"), format!("(10, {}; {}, {})", 1 - 6 * r, 1 - 6 * r, 4 * r * r), pic.gram());
        let model = K3Model::new(format!("gm_r{r}"), pic.clone(), LatticeVector::from_i64(&[1, 0]))?;
        let four = vectors(&model, &["(1,-B,4)", "(2,-B,2)", "(0,0,1)"])?
            .into_iter()
            .chain(std::iter::once(MukaiVector::from_i64(r, &[0, 1], s)))
            .collect::<Vec<_>>();
        c.holds(
            format!("r={r}: Mukai pairings reproduce the rank-4 Gram"),
            rank_four_gram(r),
            model.gram_matrix(&four)?,
            model.gram_matrix(&four)? == rank_four_gram(r),
        );

        let b = LatticeVector::from_i64(&[1, 0]);
        let mut found = Vec::new();
        let mut all_forbidden = true;
        for x in -ISOTROPIC_SEARCH_BOUND..=ISOTROPIC_SEARCH_BOUND {
            for y in -ISOTROPIC_SEARCH_BOUND..=ISOTROPIC_SEARCH_BOUND {
                let v = LatticeVector::from_i64(&[x, y]);
                if v.is_zero() || !pic.square(&v)?.is_zero() {
                    continue;
                }
                let bv = pic.pairing(&b, &v)?;
                if bv == BigInt::one() || bv == BigInt::from(3) {
                    let g = IntMatrix::from_rows(vec![vec![BigInt::from(10), bv.clone()], vec![bv, BigInt::zero()]])?;
                    all_forbidden &= catalog.contains(&g);
                    found.push(v);
                }
            }
        }
        let target = pic.class(expected_class)?;
        let names: Vec<String> = found.iter().map(|v| pic.format(v)).collect();
        c.holds(
            format!("r={r}: isotropic xB+yD with B-pairing 1 or 3, |x|,|y| ≤ {ISOTROPIC_SEARCH_BOUND}"),
            format!("contains {expected_class}"),
            format!("{{{}}}", names.join(", ")),
            found.contains(&target),
        );
        c.eq(format!("r={r}: every hit spans a forbidden lattice with B"), true, all_forbidden && !found.is_empty());
    }
    Ok(())
}

fn format_set(s: &BTreeSet<i64>) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

pub(super) fn wall_spherical(c: &mut Checks) -> Result<()> {
    let sols = solve_wall_equation(-6);
    c.eq("4d² + 6de = -6 (divisor enumeration of -3)", "∅", &sols);
    c.eq("residues (d, e) mod 9 with 4d² + 6de ≡ -6", 0, residue_solutions(-6, 9));
    Ok(())
}

/// Number of `(d, e) ∈ (Z/k)²` with `4d² + 6de ≡ target (mod k)`.
fn residue_solutions(target: i64, k: i64) -> usize {
    (0..k).flat_map(|d| (0..k).map(move |e| (d, e))).filter(|&(d, e)| (4 * d * d + 6 * d * e - target).rem_euclid(k) == 0).count()
}

pub(super) fn wall_semirigid(c: &mut Checks) -> Result<()> {
    let sols = solve_wall_equation(-8);
    c.eq(
        "4d² + 6de = -8 (divisor enumeration of -4)",
        "{(-4, 3), (-2, 2), (-1, 2), (1, -2), (2, -2), (4, -3)}",
        &sols,
    );
    let pic = IntLattice::from_i64(&[&[4, 3], &[3, 0]], &["D", "E"]);
    let mut bad = Vec::new();
    for &(d, e) in &sols.pairs {
        let class = LatticeVector::from_i64(&[d, e]);
        if pic.square(&class)? != BigInt::from(-8) {
            bad.push(pic.format(&class));
        }
    }
    let classes: BTreeSet<String> = sols.pairs.iter().map(|&(d, e)| pic.format(&LatticeVector::from_i64(&[d, e]))).collect();
    let expected: BTreeSet<String> =
        ["D-2E", "-D+2E", "2D-2E", "-2D+2E", "4D-3E", "-4D+3E"].iter().map(|s| s.to_string()).collect();
    c.holds(
        "classes dD + eE",
        "±(D-2E), ±(2D-2E), ±(4D-3E)",
        classes.iter().cloned().collect::<Vec<_>>().join(", "),
        classes == expected,
    );
    c.holds("every class squares to -8", "all", if bad.is_empty() { "all".into() } else { bad.join(", ") }, bad.is_empty());
    c.eq("4d² + 6de = -4 (one-point Z)", "∅", solve_wall_equation(-4));
    c.eq("residues (d, e) mod 3 with 4d² + 6de ≡ -4", 0, residue_solutions(-4, 3));
    Ok(())
}

pub(super) fn mori_nef(c: &mut Checks) -> Result<()> {
    let pic = K3Model::quartic_with_line().picard().clone();
    let e = pic.class("E")?;
    let l = pic.class("D-E")?;
    let nef = pic.dual_cone_rank2([&e, &l])?;
    c.eq("dual of the Mori cone ⟨E, D-E⟩", "(E, 3D-E)", format!("({}, {})", pic.format(&nef[0]), pic.format(&nef[1])));
    let h = pic.class("D+E")?;
    c.eq("H = D + E has H²", 10, pic.square(&h)?);
    let basis = IntMatrix::from_columns(&[h.coords().to_vec(), e.coords().to_vec()])?;
    let he = pic.change_of_basis(&basis, Some(vec!["H".into(), "E".into()]))?;
    c.eq("Gram in the basis (H, E)", "(10, 3; 3, 0)", he.gram());
    c.eq("(H, E) is a basis", 1, basis.determinant()?.abs());
    c.eq("(10, 3; 3, 0) is in the forbidden catalog", true, ForbiddenLatticeCatalog::gm_k3().contains(he.gram()));
    Ok(())
}

pub(super) fn bundle_numerics(c: &mut Checks) -> Result<()> {
    let model = K3Model::quartic_with_line();
    let u = model.spherical_class("U").expect("registered").clone();
    c.eq("v(U)²", -2, model.mukai_square(&u)?);
    let mut off = Vec::new();
    for d in R_RANGE {
        let k = MukaiVector::from_i64(2, &[-1, -2], 3 - d);
        let sq = model.mukai_square(&k)?;
        if sq != BigInt::from(4 + 4 * d) || (d <= -2 && sq > BigInt::from(-4)) {
            off.push(format!("d={d}: {sq}"));
        }
    }
    c.holds(
        "v(K)² = 4 + 4d ≤ -4 for v(K) = (2, -D-2E, 3-d), d ≤ -2, d in [-10, 10]",
        "holds",
        if off.is_empty() { "holds".into() } else { off.join("; ") },
        off.is_empty(),
    );
    let o_minus_d = model.parse_vector("O(-D)")?;
    c.eq("χ(O(-D), U)", 2, model.euler_characteristic(&o_minus_d, &u)?);
    c.eq("(3, -2D-E, 6)²", -8, model.mukai_square(&model.parse_vector("(3,-2D-E,6)")?)?);
    let vs = model.parse_vector("(2,-D-2E,4)")?;
    c.eq("v(V_s)² (semirigid)", 0, model.mukai_square(&vs)?);
    c.eq("χ(O(-D), V_s)", 0, model.euler_characteristic(&o_minus_d, &vs)?);
    Ok(())
}

pub(super) fn obstruction_groups(c: &mut Checks) -> Result<()> {
    let units = AbelianGroupModel::field_units();
    c.eq("H³(Z/2, C^×)", "Z/2", cyclic_cohomology(2, 3, &units)?);
    c.eq("H²(Z/2, C^×)", "0", cyclic_cohomology(2, 2, &units)?);
    let laurent: AbelianGroupModel = "Cx+Z".parse()?;
    for m in 2..=12 {
        for n in [2, 4, 6] {
            c.eq(format!("H^{n}(Z/{m}, C^× ⊕ Z)"), format!("Z/{m}"), cyclic_cohomology(m, n, &laurent)?);
            c.eq(format!("H^{n}(Z/{m}, C^×)"), "0", cyclic_cohomology(m, n, &units)?);
        }
    }
    Ok(())
}

pub(super) fn destabilizer_classes(c: &mut Checks) -> Result<()> {
    let model = K3Model::quartic_with_line();
    let pic = model.picard();
    let d = pic.class("D")?;
    let walls = solve_wall_equation(-8);
    for (c1_text, expected, preferred) in [("-D", "{-D+E, -E}", "-D+E"), ("-D-2E", "{-2E, -D}", "-D")] {
        let c1 = pic.class(c1_text)?;
        let diff = &c1 - &d;
        c.eq(format!("c1 = {c1_text}: c1 - D divisible by 2"), true, diff.coords().iter().all(|x| x.is_even()));
        // v(V)² = 0 fixes s = c1²/4
        let s = pic.square(&c1)? / 4;
        let v = MukaiVector::new(BigInt::from(2), c1.clone(), s);
        c.eq(format!("c1 = {c1_text}: v(V)²"), 0, model.mukai_square(&v)?);

        let mut integral = BTreeSet::new();
        let mut chi_ok = true;
        let mut best: Option<(BigRational, LatticeVector)> = None;
        for &(x, y) in &walls.pairs {
            let delta = LatticeVector::from_i64(&[x, y]);
            let twice_b = &c1 + &delta;
            if !twice_b.coords().iter().all(|x| x.is_even()) {
                continue;
            }
            let b = LatticeVector::new(twice_b.coords().iter().map(|x| x / 2).collect());
            let ob = model.line_bundle_vector(&b)?;
            let quotient = model.line_bundle_vector(&(&c1 - &b))?;
            chi_ok &= model.euler_characteristic(&ob, &v)?.is_zero() && ob.add(&quotient) == v;
            let mu = model.slope(model.polarization(), &ob)?;
            if best.as_ref().is_none_or(|(m, _)| mu > *m) {
                best = Some((mu, b.clone()));
            }
            integral.insert(pic.format(&b));
        }
        c.eq(
            format!("c1 = {c1_text}: integral B = (c1 + δ)/2 over wall classes δ"),
            expected,
            format!("{{{}}}", integral.iter().cloned().collect::<Vec<_>>().join(", ")),
        );
        c.eq(format!("c1 = {c1_text}: χ(O(B), V) = 0 and v(O(B)) + v(O(c1 - B)) = v(V)"), true, chi_ok);
        let chosen = best.map(|(_, b)| pic.format(&b)).unwrap_or_else(|| "none".into());
        c.eq(format!("c1 = {c1_text}: μ_D-destabilizing candidate"), preferred, chosen);
    }
    Ok(())
}

pub(super) fn pseudoheight_fano(c: &mut Checks) -> Result<()> {
    let json = r#"{"n":2, "rel_dim":3, "e_plain":{"1,2":0}, "e_serre":{"1,1":3,"2,2":3,"2,1":3}}"#;
    let table = ExtDegreeTable::from_json_str(json)?;
    c.eq("sheaf-mode bounds hold", true, table.validate_sheaf_mode().is_ok());
    let ph = pseudoheight(&table);
    c.eq("pseudoheight of (O_Y, O_Y(1))", 2, ph);
    c.holds("ph ≥ rel_dim - n + 1", ">= 2", ph, ph >= Degree::Finite(2));
    let v = connectedness_verdict(ph, table.rel_dim(), table.n());
    c.eq("restriction is an isomorphism through degree", 0, v.iso_range_max);
    c.eq("rel_dim ≥ n + 1", true, v.connected_by_criterion);
    Ok(())
}
