use incidence::binaryforms::{richardson_anisotropy, richardson_full};
use incidence::charcalc::{ch_identity_check, presets};
use incidence::exactlin::RankMode;
use incidence::incidence::build_complex;
use incidence::{OperadType, QuadraticPresentation};

#[test]
fn l7_full_pipeline_is_anisotropic() {
    let r = richardson_anisotropy(7, false, RankMode::Modular { seed: 7 }).unwrap();
    let full = r.full.as_ref().unwrap();
    assert_eq!(full.cohomology.dims(), [19, 1, 12240]);
    assert!(full.obstruction_nonzero());
    assert_eq!(r.verdict.category(), "CertifiedAnisotropic");
    assert!(!r.conditional_on_h2_dim_one);
}

#[test]
fn exact_and_modular_agree_on_l7() {
    let exact = richardson_full(7, RankMode::Exact).unwrap();
    let modular = richardson_full(7, RankMode::Modular { seed: 3 }).unwrap();
    assert_eq!(exact.cohomology.dims(), modular.cohomology.dims());
    assert_eq!(exact.rank_phi, modular.rank_phi);
}

#[test]
fn small_odd_degrees_are_isotropic() {
    for (n, dims) in [(1, [7, 1, 60]), (3, [11, 1, 840]), (5, [15, 1, 4004])] {
        let r = richardson_anisotropy(n, false, RankMode::Exact).unwrap();
        assert_eq!(r.full.unwrap().cohomology.dims(), dims, "n = {n}");
        assert_eq!(r.verdict.category(), "IsotropicWitness", "n = {n}");
    }
    assert!(richardson_anisotropy(2, false, RankMode::Exact).is_err());
}

#[test]
fn l7_character_identity() {
    let l = incidence::binaryforms::build_richardson(7).unwrap();
    let p = QuadraticPresentation::builtin(OperadType::Lie, l.dim()).unwrap();
    let c = build_complex(&l.law, &p).unwrap();
    let r = ch_identity_check(&c, &presets::richardson(7)).unwrap();
    assert!(r.holds);
    assert_eq!(r.graded.totals(), [19, 1, 12240]);
    assert_eq!(r.graded.h2().to_multiset().unwrap(), vec![vec![0]]);
}

#[test]
fn l7_span_mode_is_the_ambient_space() {
    use incidence::incidence::build_complex_with;
    use incidence::QdualMode;
    let l = incidence::binaryforms::build_richardson(7).unwrap();
    let p = QuadraticPresentation::builtin(OperadType::Lie, l.dim()).unwrap();
    let t = std::time::Instant::now();
    let c = build_complex_with(&l.law, &p, QdualMode::SpanOfTheta, RankMode::Modular { seed: 1 }).unwrap();
    assert_eq!(c.qdual_dim(), c.presentation().target_dim());
    assert_eq!(c.cohomology().dims(), [19, 1, 12240]);
    eprintln!("{:?}", t.elapsed());
}
