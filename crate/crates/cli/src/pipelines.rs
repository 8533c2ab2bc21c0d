//! The subcommands, each turning a problem document into a report.

use std::fmt::Write as _;

use mcgauge::cohomology::{alternating_sum, cohomology_dims, quotient_complex, quotient_differential, XCap};
use mcgauge::exactpoly::{format_scalar, ratio, scalar, SuperPoly};
use mcgauge::multivec::{jacobiator, lie_poisson, MultiVec, MC_JACOBIATOR_SIGN};
use mcgauge::solver::{extend_jet, linearize as linearize_pi, pairing, solve_equivalence, ExtensionReport, SolverReport};
use rayon::prelude::*;

use crate::document::{
    multivec_to_terms, poly_to_terms, CheckDoc, CrossCheckDoc, ExtensionDoc, IterationDoc, LevelDoc, ObstructionDoc,
    ProblemDocument, ReportDocument, SolveDoc,
};
use crate::{CliError, ExitCode};

/// Document values after command-line overrides.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub jet_order: u32,
    pub x_cap: Option<u32>,
}

type Run = Result<(ExitCode, ReportDocument), CliError>;

/// The first listed role present in the document, as a bivector.
fn bivector(doc: &ProblemDocument, s: &Settings, roles: &[&'static str]) -> Result<MultiVec, CliError> {
    for role in roles {
        if let Some(w) = doc.multivector(role, 2, s.jet_order)? {
            return Ok(w);
        }
    }
    if roles.contains(&"gamma") {
        if let Some(g) = doc.lie_algebra_data()? {
            let gamma = lie_poisson(&g, s.jet_order);
            if gamma.space() != doc.space_model()? {
                return Err(CliError::Invalid(format!(
                    "lie_algebra of dimension {} needs space p = 0, q = {}",
                    g.dim(),
                    g.dim()
                )));
            }
            return Ok(gamma);
        }
    }
    let mut names: Vec<String> = roles.iter().map(|r| format!("`{r}`")).collect();
    if roles.contains(&"gamma") {
        names.push("`lie_algebra`".into());
    }
    Err(CliError::MissingRole(names.join(", ")))
}

pub fn check(doc: &ProblemDocument, s: &Settings) -> Run {
    let pi = bivector(doc, s, &["pi", "first_order", "gamma"])?;
    let space = pi.space();
    let tangent = pi.is_tangent();
    let maurer_cartan = tangent && pi.is_maurer_cartan();
    let defect = pi.schouten(&pi)?;
    let first_jet = pi.with_jet_order(1);
    let coords: Vec<SuperPoly> = (0..space.dim()).map(|i| SuperPoly::coordinate(space, i)).collect::<Result<_, _>>()?;

    let mut first_jet_vanishes = true;
    let mut agree = true;
    let mut triples = 0;
    let sign = scalar(MC_JACOBIATOR_SIGN);
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            for k in j + 1..coords.len() {
                triples += 1;
                let (f, g, h) = (&coords[i], &coords[j], &coords[k]);
                first_jet_vanishes &= jacobiator(&first_jet, f, g, h)?.is_zero();
                let via_defect = defect.contract(&[f.clone(), g.clone(), h.clone()])?.scale(&ratio(1, 2));
                let direct = jacobiator(&pi, f, g, h)?;
                agree &= via_defect.truncate_y(s.jet_order) == direct.scale(&sign);
            }
        }
    }

    let order2 = if !tangent {
        "not-applicable"
    } else {
        match extend_jet(&pi, 2, s.x_cap.unwrap_or(0)) {
            Ok(ExtensionReport::Extended { .. }) => "extends",
            Ok(ExtensionReport::Obstructed { .. }) => "obstructed",
            Err(e) if e.is_internal() => return Err(e.into()),
            Err(_) => "not-applicable",
        }
    };

    let status = if !tangent {
        "not-tangent"
    } else if maurer_cartan {
        "maurer-cartan"
    } else {
        "not-maurer-cartan"
    };
    let mut report = ReportDocument::new("check", status);
    report.check = Some(CheckDoc {
        tangent,
        maurer_cartan,
        mc_defect: multivec_to_terms(&defect),
        jacobiator_first_jet_vanishes: first_jet_vanishes,
        jacobiator_cross_check: CrossCheckDoc { sign: MC_JACOBIATOR_SIGN, triples, agree },
        order2_extension: order2.into(),
    });
    // the two Jacobiator paths can only disagree through a bug
    let exit = if agree { ExitCode::Success } else { ExitCode::Internal };
    Ok((exit, report))
}

fn cap_label(cap: XCap) -> String {
    match cap {
        XCap::Unbounded => "unbounded".into(),
        XCap::Uniform(c) => format!("uniform({c})"),
        XCap::Staggered { base, step } => format!("staggered(base={base},step={step})"),
    }
}

pub fn cohomology(doc: &ProblemDocument, s: &Settings) -> Run {
    let gamma = bivector(doc, s, &["gamma", "pi", "first_order"])?;
    let cap = XCap::staggered_for(&gamma, s.x_cap.unwrap_or(0));
    let levels = doc.levels.clone().unwrap_or_else(|| vec![1]);
    if let Some(&level) = levels.iter().find(|&&l| l >= s.jet_order) {
        return Err(CliError::Invalid(format!("level {level} needs jet order at least {}", level + 1)));
    }
    let docs = levels
        .par_iter()
        .map(|&level| {
            let complex = quotient_complex(&gamma, level, cap)?;
            let h = cohomology_dims(&complex)?;
            Ok(LevelDoc {
                level,
                power: level + 1,
                x_cap: cap_label(cap),
                cochain_dims: complex.dims(),
                euler_consistent: alternating_sum(&h) == complex.euler_characteristic(),
                cohomology_dims: h,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut report = ReportDocument::new("cohomology", "computed");
    report.cohomology = Some(docs);
    Ok((ExitCode::Success, report))
}

fn solve_report(command: &str, gamma: &MultiVec, r: &SolverReport) -> Run {
    let obstruction = r.obstruction.as_ref().map(|o| {
        let cocycle = o.cocycle.clone().unwrap_or_else(|| SuperPoly::zero(gamma.space()));
        ObstructionDoc {
            level: o.level,
            degree: o.degree,
            power: o.power(),
            dimension: o.dimension,
            cocycle_closed: quotient_differential(gamma, &cocycle, o.power()).is_zero(),
            cocycle: poly_to_terms(&cocycle),
            representatives: o.representatives.iter().map(poly_to_terms).collect(),
        }
    });
    let (exit, status) = if r.is_equivalent() {
        (ExitCode::Success, "equivalent")
    } else {
        (ExitCode::Obstructed, "obstructed")
    };
    let mut report = ReportDocument::new(command, status);
    report.solve = Some(SolveDoc {
        gauge: multivec_to_terms(r.gauge.log()),
        iterations: r
            .iterations
            .iter()
            .map(|it| IterationDoc {
                level: it.level,
                delta_norm: it.delta_norm.to_string(),
                step_norm: it.step_norm.to_string(),
                distance: it.distance.to_string(),
                from_homotopy: it.from_homotopy,
            })
            .collect(),
        final_residual: multivec_to_terms(&r.final_residual),
        obstruction,
    });
    Ok((exit, report))
}

pub fn solve(doc: &ProblemDocument, s: &Settings) -> Run {
    let gamma = bivector(doc, s, &["gamma"])?;
    let gamma_prime = bivector(doc, s, &["gamma_prime"])?;
    let r = solve_equivalence(&gamma, &gamma_prime, s.x_cap)?;
    solve_report("solve", &gamma, &r)
}

pub fn linearize(doc: &ProblemDocument, s: &Settings) -> Run {
    let pi = bivector(doc, s, &["pi", "gamma_prime"])?;
    let r = linearize_pi(&pi)?;
    let model = mcgauge::solver::linear_model(&pi)?;
    solve_report("linearize", &model, &r)
}

pub fn extend(doc: &ProblemDocument, s: &Settings, to_order: Option<u32>) -> Run {
    let first = bivector(doc, s, &["first_order", "pi"])?;
    let target = to_order.unwrap_or(s.jet_order + 1);
    let cap = s.x_cap.unwrap_or(0);
    let mut ext = ExtensionDoc {
        target_order: target,
        x_cap: cap,
        pi: None,
        obstructed_order: None,
        defect: None,
        certificate: None,
        certificate_pairing: None,
    };
    let (exit, status) = match extend_jet(&first, target, cap)? {
        ExtensionReport::Extended { pi } => {
            ext.pi = Some(multivec_to_terms(&pi));
            (ExitCode::Success, "extended")
        }
        ExtensionReport::Obstructed { order, defect, certificate, .. } => {
            ext.obstructed_order = Some(order);
            ext.certificate_pairing = Some(format_scalar(&pairing(&certificate, &defect)));
            ext.defect = Some(poly_to_terms(&defect));
            ext.certificate = Some(poly_to_terms(&certificate));
            (ExitCode::Obstructed, "obstructed")
        }
    };
    let mut report = ReportDocument::new("extend", status);
    report.extension = Some(ext);
    Ok((exit, report))
}

/// Human-readable rendering of a report.
pub fn summary(r: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mcgauge {}: {}", r.command, r.status);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  error: {e}");
    }
    if let Some(c) = &r.check {
        let _ = writeln!(out, "  tangent: {}", c.tangent);
        let _ = writeln!(out, "  maurer-cartan: {} ({} defect terms)", c.maurer_cartan, c.mc_defect.len());
        let _ = writeln!(out, "  jacobiator of the first jet vanishes: {}", c.jacobiator_first_jet_vanishes);
        let x = &c.jacobiator_cross_check;
        let _ = writeln!(out, "  jacobiator paths agree with sign {:+}: {} ({} triples)", x.sign, x.agree, x.triples);
        let _ = writeln!(out, "  order-2 extension: {}", c.order2_extension);
    }
    for l in r.cohomology.iter().flatten() {
        let _ = writeln!(
            out,
            "  level {} (power {}, x-cap {}): cochains {:?}, cohomology {:?}, euler consistent: {}",
            l.level, l.power, l.x_cap, l.cochain_dims, l.cohomology_dims, l.euler_consistent
        );
    }
    if let Some(sv) = &r.solve {
        for it in &sv.iterations {
            let _ = writeln!(
                out,
                "  level {}: |delta| {}, |X| {}, distance after {}",
                it.level, it.delta_norm, it.step_norm, it.distance
            );
        }
        let _ = writeln!(out, "  gauge: {} terms", sv.gauge.len());
        let _ = writeln!(out, "  final residual: {} terms", sv.final_residual.len());
        if let Some(o) = &sv.obstruction {
            let _ = writeln!(
                out,
                "  obstruction: H^{} of dimension {} at level {}, cocycle of {} terms, closed: {}",
                o.degree,
                o.dimension,
                o.level,
                o.cocycle.len(),
                o.cocycle_closed
            );
        }
    }
    if let Some(e) = &r.extension {
        let _ = writeln!(out, "  target order {}, x-cap base {}", e.target_order, e.x_cap);
        if let Some(order) = e.obstructed_order {
            let pairing = e.certificate_pairing.as_deref().unwrap_or("?");
            let _ = writeln!(out, "  no correction at order {order}; certificate pairs with the defect to {pairing}");
        }
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "  time: {ms} ms");
    }
    out
}
