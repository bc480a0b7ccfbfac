//! A small library of named algebras.

use crate::binaryforms::build_richardson;
use crate::charcalc::{presets, TorusAction};
use crate::error::{Error, Result};
use crate::laws::{Law, Symmetry};
use crate::presentations::OperadType;
use crate::scalar::{int, Rat};

#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: String,
    pub kind: OperadType,
    pub law: Law<Rat>,
    pub torus: Option<TorusAction>,
    pub description: &'static str,
}

fn law(m: usize, s: Symmetry, e: &[(usize, usize, usize, i64)]) -> Law<Rat> {
    Law::from_free_entries(m, s, e.iter().map(|&(i, j, k, v)| (i, j, k, int(v))))
}

fn diag(ws: &[i64]) -> Option<TorusAction> {
    Some(TorusAction {
        weights: ws.iter().map(|w| vec![*w]).collect(),
    })
}

/// Names accepted by [`builtin`]; `m` and `n` are positive integers.
pub const NAMES: &[&str] = &[
    "abelian(m)",
    "sl2",
    "so3",
    "aff1",
    "heis3",
    "gl2",
    "n4",
    "richardson(n)",
    "kx2",
    "kx3",
    "k_split(m)",
    "t2",
    "mat2",
    "kx2_comm",
    "kx3_comm",
    "k_split_comm(m)",
    "leib2",
    "leib3",
    "sl2_leib",
    "heis3_leib",
];

fn sl2_entries() -> [(usize, usize, usize, i64); 3] {
    // e = 0, h = 1, f = 2
    [(1, 0, 2, 1), (0, 0, 1, -2), (2, 1, 2, -2)]
}

fn split(name: &str) -> Result<(&str, Option<usize>)> {
    let bad = || Error::UnknownBuiltin(name.to_string());
    match name.split_once('(') {
        None => Ok((name, None)),
        Some((base, rest)) => {
            let arg = rest.strip_suffix(')').ok_or_else(bad)?;
            let n: usize = arg.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok((base, Some(n)))
        }
    }
}

pub fn builtin(name: &str) -> Result<Builtin> {
    let name = name.trim();
    let (base, arg) = split(name)?;
    use OperadType::*;
    use Symmetry::{None as Free, Skew, Symmetric};
    let (kind, law, torus, description) = match (base, arg) {
        ("abelian", Some(m)) => (Lie, Law::zero(m, Skew), diag(&vec![1; m]), "abelian Lie algebra k^m"),
        ("sl2", None) => (Lie, law(3, Skew, &sl2_entries()), Some(presets::sl2_adjoint()), "sl2 in the basis e, h, f"),
        ("so3", None) => (
            Lie,
            law(3, Skew, &[(2, 0, 1, 1), (0, 1, 2, 1), (1, 0, 2, -1)]),
            None,
            "so3: [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2",
        ),
        ("aff1", None) => (Lie, law(2, Skew, &[(1, 0, 1, 1)]), diag(&[0, 1]), "aff(1): [x,y]=y"),
        ("heis3" | "h3", None) => (Lie, law(3, Skew, &[(2, 0, 1, 1)]), Some(presets::heisenberg()), "Heisenberg: [x,y]=z"),
        ("gl2", None) => (Lie, law(4, Skew, &sl2_entries()), diag(&[2, 0, -2, 0]), "gl2 = sl2 plus a central element"),
        ("n4", None) => (
            Lie,
            law(4, Skew, &[(2, 0, 1, 1), (3, 0, 2, 1)]),
            diag(&[1, 1, 2, 3]),
            "filiform n4: [e1,e2]=e3, [e1,e3]=e4",
        ),
        ("richardson", Some(n)) => {
            let l = build_richardson(n)?;
            (Lie, l.law, Some(presets::richardson(n)), "sl2 ⋉ V_2n")
        }
        ("kx2", None) => (Assoc, law(2, Free, &kx2_entries()), diag(&[0, 1]), "dual numbers k[x]/(x²)"),
        ("kx3", None) => (Assoc, law(3, Free, &kx3_entries(false)), diag(&[0, 1, 2]), "k[x]/(x³)"),
        ("k_split", Some(m)) => (Assoc, split_law(m, Free), diag(&vec![0; m]), "split algebra k^m"),
        ("t2", None) => (
            Assoc,
            law(3, Free, &[(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 2, 1), (2, 2, 2, 1)]),
            diag(&[0, 1, 0]),
            "upper triangular 2x2 matrices: e11, e12, e22",
        ),
        ("mat2", None) => (Assoc, mat2(), diag(&[0, 1, -1, 0]), "2x2 matrices: e11, e12, e21, e22"),
        ("kx2_comm", None) => (Comm, law(2, Symmetric, &kx2_entries()[..2]), diag(&[0, 1]), "dual numbers as a commutative law"),
        ("kx3_comm", None) => (Comm, law(3, Symmetric, &kx3_entries(true)), diag(&[0, 1, 2]), "k[x]/(x³) as a commutative law"),
        ("k_split_comm", Some(m)) => (Comm, split_law(m, Symmetric), diag(&vec![0; m]), "k^m as a commutative law"),
        ("leib2", None) => (Leib, law(2, Free, &[(1, 0, 0, 1)]), diag(&[1, 2]), "non-Lie Leibniz: x·x = y"),
        ("leib3", None) => (
            Leib,
            law(3, Free, &[(1, 0, 0, 1), (2, 1, 0, 1)]),
            diag(&[1, 2, 3]),
            "non-Lie Leibniz: x·x = y, y·x = z",
        ),
        ("sl2_leib", None) => (
            Leib,
            law(3, Skew, &sl2_entries()).with_symmetry(Free)?,
            Some(presets::sl2_adjoint()),
            "sl2 viewed as a Leibniz law",
        ),
        ("heis3_leib", None) => (
            Leib,
            law(3, Skew, &[(2, 0, 1, 1)]).with_symmetry(Free)?,
            Some(presets::heisenberg()),
            "Heisenberg viewed as a Leibniz law",
        ),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Ok(Builtin {
        name: name.to_string(),
        kind,
        law,
        torus,
        description,
    })
}

fn kx2_entries() -> [(usize, usize, usize, i64); 3] {
    [(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1)]
}

fn kx3_entries(free_only: bool) -> Vec<(usize, usize, usize, i64)> {
    let mut e = Vec::new();
    for a in 0..3 {
        for b in 0..3 - a {
            if !free_only || a <= b {
                e.push((a + b, a, b, 1));
            }
        }
    }
    e
}

fn split_law(m: usize, s: Symmetry) -> Law<Rat> {
    Law::from_free_entries(m, s, (0..m).map(|i| (i, i, i, int(1))))
}

fn mat2() -> Law<Rat> {
    // E_ab with index 2a + b; E_ab E_cd = δ_bc E_ad
    let mut e = Vec::new();
    for (a, b, c, d) in quadruples() {
        if b == c {
            e.push((2 * a + d, 2 * a + b, 2 * c + d, 1));
        }
    }
    law(4, Symmetry::None, &e)
}

fn quadruples() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|n| (n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1))
}

/// A fixed catalog covering every builtin operadic type.
pub fn catalog() -> Vec<Builtin> {
    [
        "abelian(2)", "abelian(3)", "sl2", "so3", "aff1", "heis3", "gl2", "n4", "richardson(1)",
        "kx2", "kx3", "k_split(2)", "k_split(3)", "t2", "mat2",
        "kx2_comm", "kx3_comm", "k_split_comm(2)",
        "leib2", "leib3", "sl2_leib", "heis3_leib",
    ]
    .into_iter()
    .map(|n| builtin(n).expect("catalog names are valid"))
    .collect()
}
