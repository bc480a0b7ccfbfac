//! One function per subcommand; each returns a report or an error.

use std::time::Instant;

use incidence::binaryforms::{richardson_anisotropy, RatioReport, RichardsonReport};
use incidence::builtins::builtin;
use incidence::charcalc::{ch_identity_check, induced_character, TorusAction};
use incidence::exactlin::{RankMode, SparseVec};
use incidence::gram::{gram, gram_orbit_constancy, radical_containment, weight_orthogonal, IdealSource};
use incidence::incidence::{build_complex_with, FiberComplex};
use incidence::obstruction::{
    anisotropy_with, check_well_defined, kappa2, second_order_lift, AnisotropyVerdict, CertificateReason,
    LiftResult, QuadraticObstruction, SearchOptions, Witness,
};
use incidence::{Error, QdualMode, Rat};
use serde_json::{json, Value};

use crate::report::{self, rat, rats, Report};
use crate::schema::{Algebra, AlgebraInput, LawEntry};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct Options {
    pub qdual_mode: Option<QdualMode>,
    pub rank_mode: RankMode,
    pub seed: u64,
    pub trials: usize,
    pub slow: bool,
    pub bases: bool,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            qdual_mode: None,
            rank_mode: RankMode::Exact,
            seed: 0,
            trials: 100,
            slow: false,
            bases: false,
            timing: false,
        }
    }
}

fn rank_mode_name(m: RankMode) -> Value {
    match m {
        RankMode::Exact => json!("exact"),
        RankMode::Modular { seed } => json!({"modular": {"seed": seed}}),
    }
}

fn header(command: &str, a: &Algebra, opts: &Options) -> Report {
    let mut r = Report::new();
    r.insert("command".into(), json!(command));
    r.insert("input".into(), serde_json::to_value(&a.input).expect("input serializes"));
    r.insert("rank_mode".into(), rank_mode_name(opts.rank_mode));
    r
}

fn finish(mut r: Report, start: Instant, opts: &Options) -> Report {
    if opts.timing {
        r.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    r
}

pub fn complex(a: &Algebra, opts: &Options) -> Result<FiberComplex, CliError> {
    let mode = opts.qdual_mode.unwrap_or_else(|| a.presentation.default_qdual_mode());
    Ok(build_complex_with(&a.law, &a.presentation, mode, opts.rank_mode)?)
}

fn cohomology_value(c: &FiberComplex, bases: bool) -> Value {
    let r = c.cohomology();
    let basis = c.law_basis();
    let h2 = c.h2();
    let mut v = json!({
        "qdual_mode": r.qdual_mode.to_string(),
        "dims": {"h1": r.h1.dim(), "h2": r.h2.dim(), "h3": r.h3.dim()},
        "ranks": {"delta": r.rank_delta, "phi": r.rank_phi},
        "spaces": {"gl": r.gl_dim, "a_w": r.ambient_dim, "qdual": r.qdual_dim, "v": c.presentation().target_dim()},
        "euler": {"h1 - h2 + h3": r.euler_lhs, "gl - a_w + qdual": r.euler_rhs, "holds": r.euler_holds()},
        "h2_basis": h2.representatives().iter().map(|x| report::law_vector(&basis, x)).collect::<Vec<_>>(),
    });
    if bases {
        let m = c.mu().dim();
        let space = c.presentation().identity_space();
        v["h1_basis"] = c.ker_delta().basis().iter().map(|x| report::gl_vector(m, x)).collect();
        v["h3_basis"] = c.h3().representatives().iter().map(|x| report::identity_vector(space, x)).collect();
    }
    v
}

pub fn cmd_cohomology(a: &Algebra, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let c = complex(a, opts)?;
    let mut r = header("cohomology", a, opts);
    r.insert("cohomology".into(), cohomology_value(&c, opts.bases));
    Ok(finish(r, start, opts))
}

fn forms_value(k: &QuadraticObstruction) -> Value {
    k.nonzero_forms()
        .into_iter()
        .map(|n| {
            let f = &k.forms[n];
            let mut terms = Vec::new();
            for a in 0..k.h2_dim {
                for b in a..k.h2_dim {
                    // coefficient of t_a t_b
                    let c = if a == b { f[a][a].clone() } else { &f[a][b] + &f[b][a] };
                    if c != Rat::from_integer(0.into()) {
                        terms.push(json!({"a": a + 1, "b": b + 1, "c": rat(&c)}));
                    }
                }
            }
            json!({"h3_index": n + 1, "terms": terms})
        })
        .collect()
}

fn kappa_value(k: &QuadraticObstruction) -> Value {
    json!({
        "h2_dim": k.h2_dim,
        "h3_dim": k.h3_dim,
        "nonzero_forms": k.nonzero_forms().len(),
        "forms": forms_value(k),
    })
}

pub fn cmd_obstruction(a: &Algebra, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let c = complex(a, opts)?;
    let k = kappa2(&c);
    let mut r = header("obstruction", a, opts);
    r.insert("cohomology".into(), cohomology_value(&c, opts.bases));
    r.insert("kappa2".into(), kappa_value(&k));
    let wd = check_well_defined(&c, opts.trials, opts.seed)?;
    r.insert(
        "well_defined".into(),
        json!({"trials": wd.trials, "class_checks": wd.class_checks, "cross_term_checks": wd.cross_term_checks, "seed": wd.seed}),
    );
    Ok(finish(r, start, opts))
}

fn reason_name(r: &CertificateReason) -> &'static str {
    match r {
        CertificateReason::VacuousH2Zero => "VacuousH2Zero",
        CertificateReason::Dim1NonzeroForm => "Dim1NonzeroForm",
        CertificateReason::Dim2GcdCertificate => "Dim2GcdCertificate",
    }
}

pub fn verdict_value(v: &AnisotropyVerdict) -> Value {
    let evidence = match v {
        AnisotropyVerdict::CertifiedAnisotropic { reason } => json!({"reason": reason_name(reason)}),
        AnisotropyVerdict::IsotropicWitness { witness } => match witness {
            Witness::Rational(t) => json!({"witness": {"rational": rats(t)}}),
            Witness::ModP { p, coords } => json!({"witness": {"mod_p": {"p": p, "coords": coords}}}),
            Witness::QuadraticExtension { factor } => {
                json!({"witness": {"quadratic_extension": {"factor_s2_s1_s0": rats(factor)}}})
            }
        },
        AnisotropyVerdict::HeuristicAnisotropic {
            primes_tested,
            search_exhaustive_up_to,
            random_trials,
            seed,
        } => json!({
            "primes_tested": primes_tested,
            "search_exhaustive_up_to": search_exhaustive_up_to,
            "random_trials": random_trials,
            "seed": seed,
        }),
    };
    json!({"category": v.category(), "evidence": evidence, "interpretation": v.interpretation()})
}

fn lift_value(c: &FiberComplex, alpha: &SparseVec<Rat>) -> Result<Value, CliError> {
    let basis = c.law_basis();
    Ok(match second_order_lift(c, alpha)? {
        LiftResult::Lifted { beta, verified } => json!({
            "result": "Lifted",
            "alpha": report::law_vector(&basis, alpha),
            "beta": report::law_vector(&basis, &beta),
            "verified_mod_t3": verified,
        }),
        LiftResult::Obstructed { class } => json!({
            "result": "Obstructed",
            "alpha": report::law_vector(&basis, alpha),
            "class": class.iter().map(|(n, x)| json!({"h3_index": n + 1, "c": rat(x)})).collect::<Vec<_>>(),
        }),
    })
}

pub fn cmd_anisotropy(a: &Algebra, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let c = complex(a, opts)?;
    let k = kappa2(&c);
    let search = SearchOptions {
        seed: opts.seed,
        ..SearchOptions::default()
    };
    let verdict = anisotropy_with(&k, search);
    let mut r = header("anisotropy", a, opts);
    r.insert("cohomology".into(), cohomology_value(&c, opts.bases));
    r.insert("kappa2".into(), kappa_value(&k));
    r.insert("verdict".into(), verdict_value(&verdict));
    r.insert("seed".into(), json!(opts.seed));
    if let AnisotropyVerdict::IsotropicWitness { witness: Witness::Rational(t) } = &verdict {
        r.insert("witness_lift".into(), lift_value(&c, &k.class_vector(t))?);
    }
    Ok(finish(r, start, opts))
}

fn source_name(s: &IdealSource) -> &'static str {
    match s {
        IdealSource::LeibnizKernel => "leibniz_kernel",
        IdealSource::NilpotentIdeal => "nilpotent_ideal",
        IdealSource::Supplied => "supplied",
    }
}

pub fn cmd_gram(a: &Algebra, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let g = gram(&a.law);
    let mut r = header("gram", a, opts);
    r.insert("matrix".into(), report::matrix(&g.matrix));
    r.insert("rank".into(), json!(g.rank));
    r.insert(
        "radical".into(),
        Value::Array(g.radical.basis().iter().map(report::plain_vector).collect()),
    );
    let containment = match radical_containment(&a.law, a.kind, None) {
        Ok(rc) => json!({
            "ideal_source": source_name(&rc.source),
            "ideal": rc.ideal.basis().iter().map(report::plain_vector).collect::<Vec<_>>(),
            "contained_in_radical": rc.contained,
        }),
        Err(Error::IdealNotDetected) => json!({"ideal_source": null, "note": Error::IdealNotDetected.to_string()}),
        Err(e) => return Err(e.into()),
    };
    r.insert("radical_containment".into(), containment);
    let oc = gram_orbit_constancy(&a.law, opts.trials, opts.seed);
    r.insert(
        "orbit_constancy".into(),
        json!({"trials": oc.ranks.len(), "seed": oc.seed, "base_rank": oc.base_rank, "constant": oc.constant()}),
    );
    if let Some(t) = &a.torus {
        r.insert("weight_orthogonal".into(), json!(weight_orthogonal(&g, &t.weights)));
    }
    Ok(finish(r, start, opts))
}

pub fn parse_alpha(text: &str) -> Result<Vec<LawEntry>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(format!("invalid --alpha JSON: {e}")))
}

fn alpha_vector(c: &FiberComplex, entries: &[LawEntry]) -> Result<SparseVec<Rat>, CliError> {
    let m = c.mu().dim();
    let basis = c.law_basis();
    let mut v = Vec::new();
    for e in entries {
        let bad = || CliError::Schema(format!("--alpha entry ({}, {}, {}) is not a free coordinate", e.i, e.j, e.k));
        if [e.i, e.j, e.k].iter().any(|x| *x == 0 || *x > m) {
            return Err(bad());
        }
        let p = basis.position(e.i - 1, e.j - 1, e.k - 1).ok_or_else(bad)?;
        let x = incidence::scalar::parse_rat(&e.c)
            .ok_or_else(|| CliError::Schema(format!("--alpha: {:?} is not a rational", e.c)))?;
        v.push((p, x));
    }
    Ok(SparseVec::from_entries(v))
}

/// Without `alpha`, lifts the first `H²` representative (or zero when `H² = 0`).
pub fn cmd_lift(a: &Algebra, alpha: Option<&[LawEntry]>, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let c = complex(a, opts)?;
    let alpha = match alpha {
        Some(entries) => alpha_vector(&c, entries)?,
        None => c.h2().representatives().first().cloned().unwrap_or_default(),
    };
    let mut r = header("lift", a, opts);
    r.insert("lift".into(), lift_value(&c, &alpha)?);
    Ok(finish(r, start, opts))
}

pub fn torus_for(a: &Algebra) -> Result<TorusAction, CliError> {
    a.torus
        .clone()
        .ok_or_else(|| CliError::Schema("characters needs a torus in the input".into()))
}

pub fn cmd_characters(a: &Algebra, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let t = torus_for(a)?;
    let c = complex(a, opts)?;
    let induced = induced_character(a.kind, &t)?;
    let ch = ch_identity_check(&c, &t)?;
    let mut r = header("characters", a, opts);
    r.insert("qdual_mode".into(), json!(c.qdual().mode.to_string()));
    r.insert(
        "induced".into(),
        json!({
            "a_w": report::character(&induced.a_w),
            "qdual_ambient": report::character(&induced.qdual),
            "gl": report::character(&induced.gl),
        }),
    );
    r.insert(
        "graded".into(),
        ch.graded
            .blocks
            .iter()
            .map(|(w, b)| json!({"weight": w, "gl": b.gl, "a_w": b.a_w, "qdual": b.qdual, "h1": b.h1, "h2": b.h2, "h3": b.h3}))
            .collect(),
    );
    r.insert(
        "identity".into(),
        json!({
            "char_h3": report::character(&ch.lhs),
            "char_qdual - char_a_w + char_gl - char_h + char_h2": report::character(&ch.rhs),
            "holds": ch.holds,
            "degree_zero": [ch.degree_zero.0, ch.degree_zero.1],
            "euler": [ch.euler.0, ch.euler.1],
        }),
    );
    r.insert("gram_weight_orthogonal".into(), json!(weight_orthogonal(&gram(&a.law), &t.weights)));
    Ok(finish(r, start, opts))
}

fn ratios_value(r: &RatioReport) -> Value {
    json!({
        "evaluations": r.evaluations.iter().map(|e| json!({
            "triple": e.triple.iter().map(|i| format!("v{i}")).collect::<Vec<_>>(),
            "jacobiator": {"basis": format!("v{}", e.jacobiator.0), "c": rat(&e.jacobiator.1)},
            "d_psi": {"basis": format!("v{}", e.d_psi.0), "c": rat(&e.d_psi.1)},
        })).collect::<Vec<_>>(),
        "r1": rat(&r.r1),
        "r2": rat(&r.r2),
        "quotient": rat(&r.quotient),
        "convention_probe": {
            "reference": [rat(&r.probe.reference.0), rat(&r.probe.reference.1)],
            "computed": [rat(&r.probe.computed.0), rat(&r.probe.computed.1)],
            "scalar": r.probe.scalar.as_ref().map(rat),
            "matches_reference": r.probe.matches_reference(),
        },
    })
}

pub fn richardson_value(rep: &RichardsonReport) -> Report {
    let mut r = Report::new();
    r.insert("command".into(), json!("richardson"));
    r.insert("n".into(), json!(rep.n));
    r.insert("module_dim".into(), json!(2 * rep.n + 1));
    r.insert("ratios".into(), rep.ratios.as_ref().map_or(Value::Null, ratios_value));
    r.insert("verdict".into(), verdict_value(&rep.verdict));
    r.insert("conditional_on_h2_dim_one".into(), json!(rep.conditional_on_h2_dim_one));
    if let Some(f) = &rep.full {
        r.insert(
            "full".into(),
            json!({
                "dims": {"h1": f.cohomology.h1.dim(), "h2": f.h2_dim, "h3": f.h3_dim},
                "ranks": {"delta": f.rank_delta, "phi": f.rank_phi},
                "euler": {"h1 - h2 + h3": f.euler_lhs, "gl - a_w + qdual": f.euler_rhs},
                "phi_is_cocycle": f.phi_is_cocycle,
                "phi_not_coboundary": f.phi_not_coboundary,
                "obstruction_nonzero_exact": f.obstruction_nonzero_exact,
                "modular_checks": f.modular_checks.iter().map(|(p, a, b)| json!({"p": p, "rank_phi": a, "rank_augmented": b})).collect::<Vec<_>>(),
                "obstruction_nonzero": f.obstruction_nonzero(),
                "kappa2_nonzero_forms": f.kappa.nonzero_forms().len(),
            }),
        );
    }
    r
}

pub fn cmd_richardson(n: usize, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let rep = richardson_anisotropy(n, !opts.slow, opts.rank_mode)?;
    let mut r = richardson_value(&rep);
    r.insert("mode".into(), json!(if opts.slow { "full" } else { "fast" }));
    r.insert("rank_mode".into(), rank_mode_name(opts.rank_mode));
    Ok(finish(r, start, opts))
}

pub fn cmd_builtin(name: &str) -> Result<AlgebraInput, CliError> {
    let b = builtin(name).map_err(|e| CliError::Schema(e.to_string()))?;
    Ok(AlgebraInput::from_builtin(&b))
}
