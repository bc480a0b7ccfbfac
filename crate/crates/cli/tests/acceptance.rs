//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use incidence::binaryforms::{reference_ratios, richardson_anisotropy};
use incidence::builtins::{builtin, catalog, Builtin};
use incidence::charcalc::{ch_identity_check, presets, TorusAction};
use incidence::exactlin::{image, kernel, RankMode, SparseVec};
use incidence::gram::{equivariance_holds, gram, gram_orbit_constancy, radical_containment, IdealSource};
use incidence::incidence::{build_complex, build_complex_with, ce_truncation, rank_profile, FiberComplex};
use incidence::laws::{act, delta_matrix, identity_value};
use incidence::obstruction::{
    check_well_defined, kappa2, second_order_lift, AnisotropyVerdict, CertificateReason, LiftResult,
};
use incidence::sample;
use incidence::scalar::{int, rat};
use incidence::{EndW, Law, OperadType, QdualMode, QuadraticPresentation, Rat, Symmetry};
use incidence_cli::commands::{cmd_anisotropy, cmd_richardson, Options};
use incidence_cli::AlgebraInput;
use num_traits::Zero;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("took {t:?}, budget {budget:?}"))
}

fn presentation(b: &Builtin) -> QuadraticPresentation {
    QuadraticPresentation::builtin(b.kind, b.law.dim()).expect("builtin types")
}

fn complex(name: &str) -> FiberComplex {
    let b = builtin(name).expect("known builtin");
    build_complex(&b.law, &presentation(&b)).expect("builtins are on locus")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = cmd_richardson(7, &Options::default()).map_err(|e| e.to_string())?;
    let q = &r["ratios"]["quotient"];
    ensure(q == "-13/20", || format!("quotient {q}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("r1/r2 = {}", q.as_str().unwrap_or_default()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = richardson_anisotropy(7, true, RankMode::Exact).map_err(|e| e.to_string())?;
    let ratios = r.ratios.ok_or("no ratios")?;
    let (p1, p2) = reference_ratios();
    let s = ratios.probe.scalar.clone().ok_or("ratios are not a common multiple of the reference values")?;
    ensure(ratios.r1 == &s * &p1 && ratios.r2 == &s * &p2, || "scalar does not relate both ratios".into())?;
    ensure(ratios.probe.matches_reference() && s == int(1), || format!("probe scalar {s}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("(r1, r2) = ({}, {}), probe scalar {s}", ratios.r1, ratios.r2))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let r = richardson_anisotropy(7, false, RankMode::Modular { seed: 0 }).map_err(|e| e.to_string())?;
    let full = r.full.as_ref().ok_or("no full pipeline")?;
    ensure(full.h2_dim == 1, || format!("dim H² = {}", full.h2_dim))?;
    ensure(
        r.verdict
            == AnisotropyVerdict::CertifiedAnisotropic {
                reason: CertificateReason::Dim1NonzeroForm,
            },
        || format!("verdict {:?}", r.verdict),
    )?;
    ensure(full.obstruction_nonzero(), || "modular and exact obstruction checks disagree".into())?;
    within(start, Duration::from_secs(15 * 60))?;
    Ok(format!(
        "dim H² = 1, CertifiedAnisotropic(Dim1NonzeroForm), dims {:?} in {:.1?}",
        full.cohomology.dims(),
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let algebras: Vec<Builtin> = catalog().into_iter().chain([builtin("richardson(7)").unwrap()]).collect();
    let mut kinds = std::collections::BTreeSet::new();
    let mut checks = 0;
    for b in &algebras {
        let p = presentation(b);
        for mode in [QdualMode::Ambient, QdualMode::SpanOfTheta] {
            let c = build_complex_with(&b.law, &p, mode, RankMode::Exact).map_err(|e| format!("{}: {e}", b.name))?;
            let r = c.cohomology();
            ensure(r.euler_holds(), || format!("{} ({mode}): {} ≠ {}", b.name, r.euler_lhs, r.euler_rhs))?;
            let [h1, h2, h3] = r.dims();
            let lhs = h1 as i64 - h2 as i64 + h3 as i64;
            let rhs = r.gl_dim as i64 - r.ambient_dim as i64 + r.qdual_dim as i64;
            ensure(lhs == rhs, || format!("{} ({mode}): recomputed Euler sides differ", b.name))?;
            checks += 1;
        }
        kinds.insert(b.kind);
    }
    ensure(algebras.len() >= 12, || format!("only {} algebras", algebras.len()))?;
    ensure(kinds.len() == 4, || format!("types covered: {kinds:?}"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} algebras, {} types, {checks} checks", algebras.len(), kinds.len()))
}

const TRIALS: usize = 100;

fn random_on_locus(rng: &mut sample::SeededRng, b: &Builtin) -> Law<Rat> {
    let (g, _) = sample::invertible(rng, b.law.dim());
    act(&g, &b.law).expect("invertible")
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let small: Vec<Builtin> = catalog().into_iter().filter(|b| b.law.dim() <= 4).collect();
    let mut rng = sample::rng(5);

    // Φ∘δ = 0 at random points of builtin orbits
    for t in 0..TRIALS {
        let b = &small[t % small.len()];
        let nu = random_on_locus(&mut rng, b);
        let p = presentation(b);
        ensure(p.phi_matrix(&nu).mul(&delta_matrix(&nu)).is_zero(), || format!("Φ∘δ ≠ 0 on {} orbit", b.name))?;
    }

    // κ₂ class independence and cross terms
    let mut class_checks = 0;
    let mut cross_checks = 0;
    for (n, name) in ["abelian(3)", "kx2", "heis3", "n4", "kx2_comm", "leib2"].into_iter().enumerate() {
        let c = complex(name);
        let r = check_well_defined(&c, TRIALS, 50 + n as u64).map_err(|e| format!("{name}: {e}"))?;
        class_checks += r.class_checks;
        cross_checks += r.cross_term_checks;
    }
    ensure(class_checks >= TRIALS && cross_checks >= TRIALS, || "too few well-definedness checks".into())?;

    // Gram equivariance and rank constancy along orbits
    for t in 0..TRIALS {
        let b = &small[t % small.len()];
        let (g, ginv) = sample::invertible(&mut rng, b.law.dim());
        ensure(equivariance_holds(&b.law, &g, &ginv), || format!("Gram not equivariant on {}", b.name))?;
    }
    for b in &small {
        let r = gram_orbit_constancy(&b.law, TRIALS, 7);
        ensure(r.constant(), || format!("Gram rank varies on the orbit of {}", b.name))?;
    }

    // lift exists ⇔ κ₂ vanishes on the class
    let (mut lifted, mut obstructed) = (0, 0);
    for name in ["abelian(3)", "heis3", "kx2", "abelian(2)"] {
        let c = complex(name);
        let k = kappa2(&c);
        for _ in 0..TRIALS / 4 {
            let t: Vec<Rat> = (0..k.h2_dim)
                .map(|_| if sample::small_int(&mut rng, 2).is_zero() { sample::small_int(&mut rng, 2) } else { Rat::zero() })
                .collect();
            let xi = sample::vector(&mut rng, c.gl_dim(), 2);
            let alpha = k.class_vector(&t).add(&c.apply_delta(&xi));
            let vanishes = k.evaluate(&t).iter().all(Zero::is_zero);
            match second_order_lift(&c, &alpha).map_err(|e| e.to_string())? {
                LiftResult::Lifted { verified, .. } => {
                    ensure(vanishes && verified, || format!("{name}: lift exists but κ₂(t) ≠ 0"))?;
                    lifted += 1;
                }
                LiftResult::Obstructed { .. } => {
                    ensure(!vanishes, || format!("{name}: obstructed but κ₂(t) = 0"))?;
                    obstructed += 1;
                }
            }
        }
    }
    ensure(lifted > 0 && obstructed > 0, || format!("lifted {lifted}, obstructed {obstructed}"))?;

    // Θ(ν, ν) = F(ν) on random laws of every type
    let kinds = [OperadType::Lie, OperadType::Assoc, OperadType::Comm, OperadType::Leib];
    for t in 0..TRIALS {
        let kind = kinds[t % 4];
        let m = 2 + t % 3;
        let p = QuadraticPresentation::builtin(kind, m).unwrap();
        let nu = sample::law(&mut rng, p.law_basis().unwrap(), 3);
        let f = identity_value(kind, &nu).unwrap();
        ensure(p.evaluate(&nu.coords()).unwrap() == f, || format!("Θ(ν,ν) ≠ F(ν) for {kind} m = {m}"))?;
    }
    Ok(format!(
        "6 properties, ≥ {TRIALS} trials each ({class_checks} class and {cross_checks} cross-term checks, {lifted} lifted and {obstructed} obstructed) in {:.1?}",
        start.elapsed()
    ))
}

/// `F(μ + sα + s²β)` vanishes to order 3 in `s`, checked by exact evaluation at `s = 0..4`.
fn vanishes_mod_t3(kind: OperadType, mu: &Law<Rat>, alpha: &SparseVec<Rat>, beta: &SparseVec<Rat>) -> bool {
    let basis = mu.basis();
    let base = mu.coords();
    let f = |s: i64| {
        let s = int(s);
        let v = base.add_scaled(&s, alpha).add_scaled(&(&s * &s), beta);
        identity_value(kind, &Law::from_coords(&basis, &v)).unwrap()
    };
    if !f(0).is_zero() {
        return false;
    }
    // F(s)/s³ must be affine in s on s = 1..4
    let g: Vec<SparseVec<Rat>> = (1..=4).map(|s| f(s).scale(&rat(1, s * s * s))).collect();
    (0..2).all(|i| g[i].sub(&g[i + 1].scale(&int(2))).add(&g[i + 2]).is_zero())
}

fn criterion_6() -> Outcome {
    for name in ["sl2", "aff1"] {
        let h2 = complex(name).cohomology().h2.dim();
        ensure(h2 == 0, || format!("{name}: H² = {h2}"))?;
    }
    let b = builtin("kx2").unwrap();
    let a = AlgebraInput::from_builtin(&b).validate().map_err(|e| e.to_string())?;
    let report = cmd_anisotropy(&a, &Options::default()).map_err(|e| e.to_string())?;
    let h2 = report["cohomology"]["dims"]["h2"].as_u64().unwrap_or(0);
    ensure(h2 > 0, || "kx2: H² = 0".into())?;
    ensure(report["verdict"]["category"] == "IsotropicWitness", || format!("kx2 verdict {}", report["verdict"]))?;
    ensure(report["witness_lift"]["verified_mod_t3"] == true, || "witness lift not verified".into())?;

    let c = complex("kx2");
    let k = kappa2(&c);
    let AnisotropyVerdict::IsotropicWitness {
        witness: incidence::obstruction::Witness::Rational(t),
    } = incidence::obstruction::anisotropy(&k)
    else {
        return Err("kx2: no rational witness".into());
    };
    let alpha = k.class_vector(&t);
    let LiftResult::Lifted { beta, .. } = second_order_lift(&c, &alpha).map_err(|e| e.to_string())? else {
        return Err("kx2: witness does not lift".into());
    };
    ensure(vanishes_mod_t3(OperadType::Assoc, &b.law, &alpha, &beta), || "substitution oracle rejects the lift".into())?;
    Ok(format!("H²(sl2) = H²(aff1) = 0, H²(kx2) = {h2} with a lift verified mod t³"))
}

fn criterion_7() -> Outcome {
    let expected = [("sl2", 3), ("heis3", 0), ("k_split(2)", 2), ("kx2", 1), ("richardson(7)", 3)];
    for (name, rank) in expected {
        let r = gram(&builtin(name).unwrap().law).rank;
        ensure(r == rank, || format!("rank γ({name}) = {r}, expected {rank}"))?;
    }
    let leib = builtin("leib2").unwrap();
    let lie_law = leib.law.with_symmetry(Symmetry::Skew).is_ok();
    ensure(!lie_law, || "leib2 is a Lie law".into())?;
    let rc = radical_containment(&leib.law, OperadType::Leib, None).map_err(|e| e.to_string())?;
    ensure(rc.source == IdealSource::LeibnizKernel && rc.ideal.dim() > 0, || "empty Leibniz kernel".into())?;
    ensure(rc.contained, || "Leibniz kernel not inside rad γ".into())?;
    Ok("ranks 3, 0, 2, 1, 3; Leib(leib2) ⊆ rad γ".into())
}

fn criterion_8() -> Outcome {
    let names = ["abelian(1)", "abelian(2)", "abelian(3)", "abelian(4)", "sl2", "so3", "aff1", "heis3", "gl2", "n4"];
    for name in names {
        let b = builtin(name).unwrap();
        let c = complex(name);
        let (d1, d2) = ce_truncation(&b.law).map_err(|e| e.to_string())?;
        ensure(&kernel(&d2) == c.ker_phi(), || format!("{name}: ker Φ ≠ ker d²"))?;
        ensure(&image(&d1) == c.im_delta(), || format!("{name}: im δ ≠ im d¹"))?;
    }
    Ok(format!("{} Lie algebras of dimension ≤ 4", names.len()))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, FiberComplex, TorusAction)> = vec![("sl2".into(), complex("sl2"), presets::sl2_adjoint())];
    let tori = [
        TorusAction::new(vec![vec![1, 0], vec![0, 1], vec![3, -2]]).unwrap(),
        presets::diagonal(3),
        presets::heisenberg(),
    ];
    for kind in [OperadType::Lie, OperadType::Assoc, OperadType::Comm, OperadType::Leib] {
        let p = QuadraticPresentation::builtin(kind, 3).unwrap();
        let zero = Law::zero(3, kind.law_symmetry().unwrap());
        for t in &tori {
            cases.push((format!("0 ({kind})"), build_complex(&zero, &p).unwrap(), t.clone()));
        }
    }
    for (name, c, t) in &cases {
        let r = ch_identity_check(c, t).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("{name}: character identity fails"))?;
        ensure(r.degree_zero.0 == r.degree_zero.1, || format!("{name}: degree-0 sides differ"))?;
        let [h1, h2, h3] = c.cohomology().dims();
        ensure(r.degree_zero.0 == h3 as i64, || format!("{name}: degree 0 of char H³ is not dim H³"))?;
        ensure(
            r.euler.0 == r.euler.1 && r.euler.0 == h1 as i64 - h2 as i64 + h3 as i64,
            || format!("{name}: Euler integers {:?}", r.euler),
        )?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} (law, torus) pairs", cases.len()))
}

fn criterion_10() -> Outcome {
    // sl2 in the basis x = e, y = f, z = h
    let sl2 = Law::from_free_entries(3, Symmetry::Skew, [(2, 0, 1, int(1)), (0, 0, 2, int(-2)), (1, 1, 2, int(2))]);
    let closed = |t: &Rat| {
        let t2 = t * t;
        Law::from_free_entries(3, Symmetry::Skew, [(2, 0, 1, int(1)), (0, 0, 2, -&t2 * int(2)), (1, 1, 2, &t2 * int(2))])
    };
    let p = QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap();
    let mut ranks = Vec::new();
    for t in [int(1), rat(1, 2), rat(1, 3)] {
        let ti = t.recip();
        let g = EndW::diagonal(&[ti.clone(), ti.clone(), &ti * &ti]);
        let mu_t = act(&g, &sl2).map_err(|e| e.to_string())?;
        ensure(mu_t == closed(&t), || format!("conjugate-scaled law at t = {t} differs from the closed form"))?;
        let r = rank_profile(&mu_t, &p).map_err(|e| e.to_string())?;
        ranks.push((r.rank_delta, r.rank_phi));
    }
    let limit = closed(&Rat::zero());
    ensure(limit == builtin("heis3").unwrap().law, || "t = 0 limit is not h3".into())?;
    let r0 = rank_profile(&limit, &p).map_err(|e| e.to_string())?;
    ensure(ranks.iter().all(|r| *r == ranks[0]), || format!("ranks vary: {ranks:?}"))?;
    ensure(ranks[0].0 >= r0.rank_delta && ranks[0].1 >= r0.rank_phi, || format!("{:?} vs {r0:?}", ranks[0]))?;
    Ok(format!(
        "(rank δ, rank Φ) = {:?} for t = 1, 1/2, 1/3 and {:?} at t = 0",
        ranks[0],
        (r0.rank_delta, r0.rank_phi)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Richardson ratio quotient", criterion_1),
        ("Richardson exact ratios and convention probe", criterion_2),
        ("Richardson full pipeline", criterion_3),
        ("Euler identity on the builtin library", criterion_4),
        ("randomized property suite", criterion_5),
        ("rigidity spot-checks", criterion_6),
        ("Gram stratification", criterion_7),
        ("Chevalley-Eilenberg comparison", criterion_8),
        ("character identity", criterion_9),
        ("semicontinuity along a contraction", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} [{t:.2?}]", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{t:.2?}]", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
