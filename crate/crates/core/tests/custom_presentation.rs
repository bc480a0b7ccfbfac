use incidence::builtins::builtin;
use incidence::incidence::build_complex;
use incidence::sample;
use incidence::scalar::rat;
use incidence::{Law, LawBasis, OperadType, QuadraticPresentation, Rat, Symmetry};

/// Jacobiator of a skew law on k³ written out as a symmetric tensor on `A_W`.
fn jacobiator_tensor() -> Vec<(usize, usize, usize, Rat)> {
    let basis = LawBasis::new(3, Symmetry::Skew);
    // μ^s_{xy} as ± a coordinate
    let coord = |s: usize, x: usize, y: usize| -> Option<(usize, i64)> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => basis.position(s, x, y).map(|p| (p, 1)),
            std::cmp::Ordering::Greater => basis.position(s, y, x).map(|p| (p, -1)),
            std::cmp::Ordering::Equal => None,
        }
    };
    let mut out = Vec::new();
    for i in 0..3 {
        for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            for s in 0..3 {
                // μ^s_{xy} μ^i_{sz}
                if let (Some((p, a)), Some((q, b))) = (coord(s, x, y), coord(i, s, z)) {
                    out.push((i, p, q, rat(a * b, 2)));
                    out.push((i, q, p, rat(a * b, 2)));
                }
            }
        }
    }
    out
}

fn custom() -> QuadraticPresentation {
    QuadraticPresentation::custom(jacobiator_tensor(), 9, 3)
        .unwrap()
        .for_laws(LawBasis::new(3, Symmetry::Skew))
        .unwrap()
}

#[test]
fn custom_jacobiator_agrees_with_builtin_lie() {
    let (c, b) = (custom(), QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap());
    let basis = b.law_basis().unwrap().clone();
    let mut rng = sample::rng(11);
    for _ in 0..100 {
        let nu = sample::law(&mut rng, &basis, 4).coords();
        assert_eq!(c.evaluate(&nu).unwrap(), b.evaluate(&nu).unwrap());
    }
}

#[test]
fn custom_presentation_gives_the_same_cohomology() {
    let (c, b) = (custom(), QuadraticPresentation::builtin(OperadType::Lie, 3).unwrap());
    for name in ["sl2", "heis3", "abelian(3)", "so3"] {
        let mu: Law<Rat> = builtin(name).unwrap().law;
        let x = build_complex(&mu, &c).unwrap().cohomology();
        let y = build_complex(&mu, &b).unwrap().cohomology();
        assert_eq!(x.dims(), y.dims(), "{name}");
    }
}
