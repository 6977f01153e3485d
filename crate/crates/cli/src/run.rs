//! Command dispatch: resolve bodies and lattices from the config, execute,
//! and emit JSON-lines or CSV reports deterministically.

use std::io::Write;

use rayon::prelude::*;
use serde_json::{json, Value};

use latslice_core::counting::{
    count_projected_points, count_projection, count_section, max_section_over_levels,
    CountOptions,
};
use latslice_core::exact::{format_rat, parse_rat};
use latslice_core::harness::{
    check_brunn, check_discrete_lw, check_discrete_meyer, check_elementary_transform,
    check_finite_sets, check_preimages, check_reverse_lw, check_simplex_counterexample,
    check_slicing, check_toolbox, check_unconditional_dilate, check_unconditional_meyer,
    check_vol_approx, fuzz_extremal, reverse_meyer_construct, slicing_ratio_scan, CheckReport,
    FamilyId, FamilyInstance, FuzzTarget, Verdict,
};
use latslice_core::lattice::{mahler_basis, successive_minima};
use latslice_core::{Body, Lattice, QMatrix, QVector};

use crate::config::{parse_halfspaces, parse_lattice, parse_vectors, Config};

/// One output line: either a structured check report or a plain JSON value.
pub enum Line {
    Report(CheckReport),
    Value(Value),
}

pub struct RunOutput {
    pub lines: Vec<Line>,
    pub fails: usize,
    pub holds: usize,
    pub inapplicable: usize,
}

/// Errors are rendered as `exit 1` usage diagnostics by the caller.
pub fn run(cfg: &Config) -> Result<RunOutput, String> {
    let lines = match cfg.command.as_str() {
        "count" => cmd_count(cfg)?,
        "section" => cmd_section(cfg)?,
        "project" => cmd_project(cfg)?,
        "minima" => cmd_minima(cfg)?,
        "polar" => cmd_polar(cfg)?,
        "check" => {
            let id = cfg
                .check_id
                .as_deref()
                .ok_or("field check_id: required for `check`")?;
            run_check(cfg, id)?.into_iter().map(Line::Report).collect()
        }
        "sweep" => cmd_sweep(cfg)?,
        "fuzz" => cmd_fuzz(cfg)?,
        "scan-slicing" => cmd_scan(cfg)?,
        "" => return Err("field command: missing".into()),
        other => return Err(format!("field command: unknown command {other:?}")),
    };
    let mut out = RunOutput {
        lines,
        fails: 0,
        holds: 0,
        inapplicable: 0,
    };
    for line in &out.lines {
        if let Line::Report(r) = line {
            match r.verdict {
                Verdict::Holds => out.holds += 1,
                Verdict::Fails => out.fails += 1,
                Verdict::Inapplicable => out.inapplicable += 1,
            }
        }
    }
    Ok(out)
}

fn core_err(e: latslice_core::Error) -> String {
    e.to_string()
}

fn family_instance(cfg: &Config) -> Result<Option<FamilyInstance>, String> {
    let Some(fam) = cfg.family.as_deref() else {
        return Ok(None);
    };
    let family = FamilyId::parse(fam).map_err(core_err)?;
    let mut inst = FamilyInstance::new(family, cfg.n.unwrap_or(3));
    inst.k = cfg.k;
    inst.h = cfg.h;
    inst.m = cfg.m;
    inst.seed = cfg.seed;
    Ok(Some(inst))
}

/// Resolve the body under test plus a printable instance descriptor.
fn resolve_body(cfg: &Config) -> Result<(Body, String), String> {
    if let Some(inst) = family_instance(cfg)? {
        let body = inst.body().map_err(core_err)?;
        return Ok((body, inst.describe()));
    }
    if let Some(text) = &cfg.body_vertices {
        let verts = parse_vectors(text).map_err(core_err)?;
        let dim = verts[0].dim();
        let body = Body::from_vertices_with_cap(dim, verts, cfg.dim_cap_or_default())
            .map_err(core_err)?;
        return Ok((body, format!("vertices({text})")));
    }
    if let Some(text) = &cfg.body_halfspaces {
        let rows = parse_halfspaces(text).map_err(core_err)?;
        let dim = rows[0].0.dim();
        let body = Body::from_halfspaces_with_cap(dim, rows, cfg.dim_cap_or_default())
            .map_err(core_err)?;
        return Ok((body, format!("halfspaces({text})")));
    }
    if let Some(text) = &cfg.body_ball {
        let n = cfg.n.ok_or("field n: required for body_ball")?;
        let r2 = parse_rat(text).map_err(core_err)?;
        let body = Body::ball(n, r2).map_err(core_err)?;
        return Ok((body, format!("ball(n={n},r2={text})")));
    }
    Err("field family: no body given (family, body_vertices, body_halfspaces or body_ball)".into())
}

fn resolve_lattice(cfg: &Config, dim: usize) -> Result<Lattice, String> {
    match &cfg.lattice_basis {
        None => Ok(Lattice::standard(dim)),
        Some(text) => parse_lattice(text, Some(dim)).map_err(core_err),
    }
}

fn int_vector(coords: &[i64]) -> QVector {
    QVector::from_ints(coords)
}

fn num_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn cmd_count(cfg: &Config) -> Result<Vec<Line>, String> {
    let (body, instance) = resolve_body(cfg)?;
    let lat = resolve_lattice(cfg, body.ambient())?;
    let res = latslice_core::counting::count(
        &body,
        &latslice_core::AffineLattice::linear(lat),
        &CountOptions::count_only(),
    )
    .map_err(core_err)?;
    Ok(vec![Line::Value(json!({
        "command": "count",
        "instance": instance,
        "count": res.count,
        "body_dim": res.body_dim,
    }))])
}

fn cmd_section(cfg: &Config) -> Result<Vec<Line>, String> {
    let (body, instance) = resolve_body(cfg)?;
    let n = body.ambient();
    let raw = cfg
        .normal
        .as_deref()
        .ok_or("field normal: required for `section`")?;
    if raw.len() != n {
        return Err(format!("field normal: expected {n} coordinates"));
    }
    let gcd = raw.iter().fold(0i64, |g, &c| num_gcd(g, c));
    let normal = int_vector(raw);
    match cfg.level {
        Some(level) => {
            let res = count_section(
                &body,
                &normal,
                &latslice_core::Int::from(level),
                &CountOptions::count_only(),
            )
            .map_err(core_err)?;
            let mut obj = json!({
                "command": "section",
                "instance": instance,
                "normal": format!("{normal:?}"),
                "level": level,
                "count": res.count,
            });
            if gcd > 1 {
                obj["normalized_from_gcd"] = json!(gcd);
            }
            Ok(vec![Line::Value(obj)])
        }
        None => {
            let scan = max_section_over_levels(&body, &normal).map_err(core_err)?;
            let mut obj = json!({
                "command": "section",
                "instance": instance,
                "normal": format!("{normal:?}"),
                "scan_lo": scan.scan_lo,
                "scan_hi": scan.scan_hi,
                "per_level": scan.per_level,
                "best_level": scan.best_level,
                "best_count": scan.best_count,
            });
            if gcd > 1 {
                obj["normalized_from_gcd"] = json!(gcd);
            }
            Ok(vec![Line::Value(obj)])
        }
    }
}

fn cmd_project(cfg: &Config) -> Result<Vec<Line>, String> {
    let (body, instance) = resolve_body(cfg)?;
    let n = body.ambient();
    let v = int_vector(cfg.v.as_deref().ok_or("field v: required for `project`")?);
    if v.dim() != n {
        return Err(format!("field v: expected {n} coordinates"));
    }
    let proj = count_projection(&body, &v, &CountOptions::count_only()).map_err(core_err)?;
    let direct = count_projected_points(&body, &v).map_err(core_err)?;
    Ok(vec![Line::Value(json!({
        "command": "project",
        "instance": instance,
        "v": format!("{v:?}"),
        "projection_count": proj.count,
        "projected_points": direct.count,
    }))])
}

fn cmd_minima(cfg: &Config) -> Result<Vec<Line>, String> {
    let (body, instance) = resolve_body(cfg)?;
    let lat = resolve_lattice(cfg, body.ambient())?;
    let profile = successive_minima(&body, &lat).map_err(core_err)?;
    let mb = mahler_basis(&body, &lat).map_err(core_err)?;
    Ok(vec![Line::Value(json!({
        "command": "minima",
        "instance": instance,
        "minima": profile.minima.iter().map(format_rat).collect::<Vec<_>>(),
        "witnesses": profile.witnesses.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>(),
        "basis": mb.vectors.iter().map(|b| format!("{b:?}")).collect::<Vec<_>>(),
        "basis_gauges": mb.gauge_values.iter().map(format_rat).collect::<Vec<_>>(),
    }))])
}

fn cmd_polar(cfg: &Config) -> Result<Vec<Line>, String> {
    let (body, instance) = resolve_body(cfg)?;
    let polar = body.polar().map_err(core_err)?;
    let desc = match &polar {
        Body::Polytope(p) => json!({
            "vertices": p.vertices().iter().map(|v| format!("{v:?}")).collect::<Vec<_>>(),
        }),
        Body::Ball(b) => json!({ "ball_radius_sq": format_rat(&b.radius_sq) }),
        Body::Empty(_) => json!({ "empty": true }),
    };
    Ok(vec![Line::Value(json!({
        "command": "polar",
        "instance": instance,
        "polar": desc,
    }))])
}

/// Execute one named check for the configured instance.
fn run_check(cfg: &Config, check_id: &str) -> Result<Vec<CheckReport>, String> {
    let reports = match check_id {
        "discrete_lw" => {
            let (body, inst) = resolve_body(cfg)?;
            vec![check_discrete_lw(&body, &inst).map_err(core_err)?]
        }
        "discrete_meyer" => {
            let (body, inst) = resolve_body(cfg)?;
            vec![check_discrete_meyer(&body, &inst).map_err(core_err)?]
        }
        "simplex_counterexample" => {
            let n = cfg.n.unwrap_or(3);
            let k = cfg.k.ok_or("field k: required for simplex_counterexample")?;
            vec![
                check_simplex_counterexample(n, k, &format!("T_k(n={n},k={k})"))
                    .map_err(core_err)?,
            ]
        }
        "brunn" => {
            let (body, inst) = resolve_body(cfg)?;
            let n = body.ambient();
            let k_sub = cfg
                .subspace_dim
                .or(cfg.k.map(|k| k as usize))
                .unwrap_or(1)
                .min(n - 1);
            let spanning: Vec<QVector> = (0..k_sub).map(|i| QVector::unit(n, i)).collect();
            let t = match &cfg.t {
                Some(parts) => {
                    let coords: Result<Vec<_>, _> =
                        parts.iter().map(|p| parse_rat(p)).collect();
                    QVector::new(coords.map_err(core_err)?)
                }
                None => QVector::unit(n, n - 1),
            };
            vec![check_brunn(
                &body,
                &spanning,
                &t,
                &format!("{inst} L=e1..e{k_sub}"),
            )
            .map_err(core_err)?]
        }
        "elementary_trafo" => {
            let (body, inst) = resolve_body(cfg)?;
            let n = body.ambient();
            let t = match &cfg.t {
                Some(parts) => {
                    let coords: Result<Vec<_>, _> =
                        parts.iter().map(|p| parse_rat(p)).collect();
                    QVector::new(coords.map_err(core_err)?)
                }
                None => QVector::new(vec![latslice_core::exact::rat(1, 2); n]),
            };
            vec![
                check_elementary_transform(&body, &QMatrix::identity(n), &t, &inst)
                    .map_err(core_err)?,
            ]
        }
        "reverse_meyer" => {
            let (body, inst) = resolve_body(cfg)?;
            let lat = resolve_lattice(cfg, body.ambient())?;
            vec![reverse_meyer_construct(&body, &lat, &inst)
                .map_err(core_err)?
                .report]
        }
        "slicing" => {
            let (body, inst) = resolve_body(cfg)?;
            vec![check_slicing(&body, cfg.normal_bound_or_default(), &inst).map_err(core_err)?]
        }
        "reverse_lw" => {
            let (body, inst) = resolve_body(cfg)?;
            vec![check_reverse_lw(&body, &inst).map_err(core_err)?]
        }
        "unconditional_dilate" => {
            let (body, inst) = resolve_body(cfg)?;
            let m = cfg.m.ok_or("field m: required for unconditional_dilate")?;
            vec![check_unconditional_dilate(&body, m, &inst).map_err(core_err)?]
        }
        "unconditional_meyer" => {
            let (body, inst) = resolve_body(cfg)?;
            vec![check_unconditional_meyer(&body, &inst).map_err(core_err)?]
        }
        "toolbox" => {
            let (body, inst) = resolve_body(cfg)?;
            let lat = resolve_lattice(cfg, body.ambient())?;
            check_toolbox(&body, &lat, &inst).map_err(core_err)?
        }
        "preimages" => {
            let (body, inst) = resolve_body(cfg)?;
            let n = body.ambient();
            let v = match &cfg.v {
                Some(coords) => int_vector(coords),
                None => QVector::unit(n, n - 1),
            };
            vec![check_preimages(&body, &v, &inst).map_err(core_err)?]
        }
        "finite_sets" => {
            let n = cfg.n.unwrap_or(2);
            let seed = cfg.seed.ok_or("field seed: required for finite_sets")?;
            let trials = cfg.budget.unwrap_or(100) as u32;
            vec![
                check_finite_sets(n, seed, trials, &format!("sumsets(n={n},seed={seed})"))
                    .map_err(core_err)?,
            ]
        }
        "vol_approx" => {
            let (body, inst) = resolve_body(cfg)?;
            let r = cfg
                .r
                .clone()
                .ok_or("field r: required for vol_approx (comma list of radii)")?;
            vec![check_vol_approx(&body, &r, None, &inst).map_err(core_err)?]
        }
        other => return Err(format!("field check_id: unknown check {other:?}")),
    };
    Ok(reports)
}

/// Cartesian expansion of the configured parameter ranges, in order.
fn expand_instances(cfg: &Config) -> Vec<Config> {
    let axis = |single: Option<i64>, range: Option<(i64, i64)>| -> Vec<Option<i64>> {
        match range {
            Some((lo, hi)) => (lo..=hi).map(Some).collect(),
            None => vec![single],
        }
    };
    let ks = axis(cfg.k, cfg.k_range);
    let hs = axis(cfg.h, cfg.h_range);
    let ms = axis(cfg.m, cfg.m_range);
    let seeds = axis(cfg.seed.map(|s| s as i64), cfg.seed_range);
    let mut out = Vec::new();
    for &k in &ks {
        for &h in &hs {
            for &m in &ms {
                for &seed in &seeds {
                    let mut c = cfg.clone();
                    c.k = k;
                    c.h = h;
                    c.m = m;
                    c.seed = seed.map(|s| s as u64);
                    c.k_range = None;
                    c.h_range = None;
                    c.m_range = None;
                    c.seed_range = None;
                    out.push(c);
                }
            }
        }
    }
    out
}

fn cmd_sweep(cfg: &Config) -> Result<Vec<Line>, String> {
    let id = cfg
        .check_id
        .as_deref()
        .ok_or("field check_id: required for `sweep`")?
        .to_string();
    let instances = expand_instances(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs_or_default())
        .build()
        .map_err(|e| format!("thread pool: {e}"))?;
    // ordered collect keeps the output byte-identical for any --jobs
    let results: Vec<Result<Vec<CheckReport>, String>> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst_cfg| run_check(inst_cfg, &id))
            .collect()
    });
    let mut lines = Vec::new();
    for res in results {
        for rep in res? {
            lines.push(Line::Report(rep));
        }
    }
    Ok(lines)
}

fn cmd_fuzz(cfg: &Config) -> Result<Vec<Line>, String> {
    let target = FuzzTarget::parse(
        cfg.target
            .as_deref()
            .ok_or("field target: required for `fuzz`")?,
    )
    .map_err(core_err)?;
    let n = cfg.n.unwrap_or(3);
    let seed = cfg.seed.ok_or("field seed: required for `fuzz`")?;
    let budget = cfg.budget.unwrap_or(100);
    let lb = fuzz_extremal(target, n, budget, seed, 10).map_err(core_err)?;
    let mut lines: Vec<Line> = lb
        .entries
        .iter()
        .map(|e| {
            Line::Value(json!({
                "fuzz": lb.target,
                "instance": e.instance,
                "ratio": e.ratio,
                "ratio_float": e.ratio_float,
                "seed": e.seed,
            }))
        })
        .collect();
    lines.push(Line::Value(json!({
        "leaderboard": lb.target,
        "n": lb.n,
        "budget": lb.budget,
        "base_seed": lb.base_seed,
        "reference": lb.reference,
        "kept": lb.entries.len(),
    })));
    Ok(lines)
}

fn cmd_scan(cfg: &Config) -> Result<Vec<Line>, String> {
    let lat = match &cfg.lattice_basis {
        Some(text) => parse_lattice(text, cfg.n).map_err(core_err)?,
        None => Lattice::standard(cfg.n.unwrap_or(2)),
    };
    let r = cfg
        .r
        .clone()
        .ok_or("field r: required for scan-slicing (comma list of radii)")?;
    let rows =
        slicing_ratio_scan(&lat, &r, cfg.normal_bound_or_default()).map_err(core_err)?;
    Ok(rows
        .into_iter()
        .map(|row| Line::Value(serde_json::to_value(row).expect("serializable")))
        .collect())
}

/// JSON-lines emission with a summary footer.
pub fn write_json_lines<W: Write>(w: &mut W, out: &RunOutput) -> std::io::Result<()> {
    for line in &out.lines {
        let text = match line {
            Line::Report(r) => serde_json::to_string(r).expect("serializable"),
            Line::Value(v) => serde_json::to_string(v).expect("serializable"),
        };
        writeln!(w, "{text}")?;
    }
    writeln!(
        w,
        "{}",
        json!({"summary": {
            "lines": out.lines.len(),
            "holds": out.holds,
            "fails": out.fails,
            "inapplicable": out.inapplicable,
        }})
    )
}

/// CSV emission for report-producing commands.
pub fn write_csv<W: Write>(w: W, out: &RunOutput) -> Result<(), String> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record([
        "check_id",
        "family",
        "params",
        "lhs",
        "rhs",
        "ratio_float",
        "verdict",
        "witnesses",
        "bounds",
    ])
    .map_err(|e| e.to_string())?;
    for line in &out.lines {
        let Line::Report(r) = line else {
            return Err("csv output is only available for check/sweep commands".into());
        };
        // instance descriptors look like `family(params)` with an optional
        // suffix after the closing paren
        let (family, params) = match r.instance.split_once('(') {
            Some((f, rest)) => {
                let params = match rest.rsplit_once(')') {
                    Some((inner, suffix)) => format!("{inner}{suffix}"),
                    None => rest.to_string(),
                };
                (f.to_string(), params)
            }
            None => (r.instance.clone(), String::new()),
        };
        wtr.write_record([
            r.check_id.as_str(),
            family.as_str(),
            params.as_str(),
            r.lhs_power.as_str(),
            r.rhs_power.as_str(),
            &r.ratio_float.to_string(),
            match r.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "fails",
                Verdict::Inapplicable => "inapplicable",
            },
            &serde_json::to_string(&r.witnesses).expect("serializable"),
            &serde_json::to_string(&r.search_bounds).expect("serializable"),
        ])
        .map_err(|e| e.to_string())?;
    }
    wtr.flush().map_err(|e| e.to_string())?;
    Ok(())
}


