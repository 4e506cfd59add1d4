use hadamard_coord::{
    bound_t1, bound_t2, bound_t3, catalog_lookup, chain_1_1, check_coordinate_convexity,
    check_full_convexity, check_hypothesis, corollary, default_lambdas, t1_bound, t2_bound,
    t3_bound, verify_identity, BoundReport, EvalPoint, HolderExponents, HypothesisStatus,
    Integrator, Rectangle, Surface, Theorem, CATALOG, DEFAULT_HYPOTHESIS_GRID,
};

use crate::config::{rect_label, SweepConfig};
use crate::error::{CliError, CliResult};
use crate::report::{Report, Row, Status};
use crate::threads::map_ordered;

pub const DEFAULT_SWEEP_GRID: usize = 5;
pub const DEFAULT_TIGHTEN_GRID: usize = 11;

struct Job {
    surface: Surface<f64>,
    rect: Rectangle<f64>,
    point: (f64, f64),
    theorem: Theorem,
    q: Option<f64>,
}

fn surfaces(cfg: &SweepConfig) -> CliResult<Vec<Surface<f64>>> {
    cfg.functions
        .iter()
        .map(|n| Ok(catalog_lookup::<f64>(n)?.surface))
        .collect()
}

fn integrator(cfg: &SweepConfig) -> Integrator<f64> {
    Integrator::new(cfg.quad)
}

pub fn verify_lemma(cfg: &SweepConfig) -> CliResult<Report> {
    let integ = integrator(cfg);
    let mut jobs = Vec::new();
    for s in surfaces(cfg)? {
        for r in &cfg.rects {
            for p in cfg.points(r)? {
                jobs.push((s.clone(), *r, p));
            }
        }
    }
    let rows = map_ordered(&jobs, |(s, r, (x, y))| -> CliResult<Row> {
        let point = r.point(*x, *y)?;
        let rep = verify_identity(s, r, &point, &integ, &cfg.tolerances)?;
        let mut row = Row::new(s.name(), rect_label(r), "identity");
        row.x = Some(*x);
        row.y = Some(*y);
        row.lhs = Some(rep.lhs);
        row.residual = Some(rep.residual);
        row.status = if rep.passed {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok(row)
    })?;
    Ok(Report::new(
        "verify-lemma",
        rows.into_iter().collect::<CliResult<_>>()?,
    ))
}

fn check_exponent(theorem: Theorem, q: f64) -> CliResult<()> {
    match theorem.delegate() {
        Theorem::T2 => {
            HolderExponents::from_q(q)?;
        }
        Theorem::T3 if q < 1.0 => {
            return Err(hadamard_coord::Error::ExponentOutOfRange(format!(
                "{theorem} needs q >= 1, got {q}"
            ))
            .into())
        }
        _ => {}
    }
    Ok(())
}

fn bound_jobs(cfg: &SweepConfig, theorems: &[Theorem]) -> CliResult<Vec<Job>> {
    for &t in theorems {
        if t.needs_q() {
            if cfg.q_values.is_empty() {
                return Err(CliError::usage(format!("{t} needs at least one --q")));
            }
            for &q in &cfg.q_values {
                check_exponent(t, q)?;
            }
        }
    }
    let mut jobs = Vec::new();
    for s in surfaces(cfg)? {
        for r in &cfg.rects {
            for &t in theorems {
                let points = match t.substituted_point(r) {
                    Some(p) => vec![(p.x(), p.y())],
                    None => cfg.points(r)?,
                };
                let qs: Vec<Option<f64>> = if t.needs_q() {
                    cfg.q_values.iter().copied().map(Some).collect()
                } else {
                    vec![None]
                };
                for &point in &points {
                    for &q in &qs {
                        jobs.push(Job {
                            surface: s.clone(),
                            rect: *r,
                            point,
                            theorem: t,
                            q,
                        });
                    }
                }
            }
        }
    }
    Ok(jobs)
}

fn evaluate(job: &Job, integ: &Integrator<f64>) -> CliResult<BoundReport<f64>> {
    let (s, r) = (&job.surface, &job.rect);
    let point = r.point(job.point.0, job.point.1)?;
    let rep = match job.theorem {
        t if t.is_corollary() => corollary(t, s, r, job.q, integ)?,
        Theorem::T1 => bound_t1(s, r, &point, integ)?,
        Theorem::T2 => {
            let q = job.q.expect("q checked");
            bound_t2(s, r, &point, &HolderExponents::from_q(q)?, integ)?
        }
        _ => bound_t3(s, r, &point, job.q.expect("q checked"), integ)?,
    };
    Ok(rep)
}

fn bound_row(cfg: &SweepConfig, job: &Job, rep: &BoundReport<f64>) -> Row {
    let mut row = Row::new(
        job.surface.name(),
        rect_label(&job.rect),
        rep.theorem.label(),
    );
    row.x = Some(job.point.0);
    row.y = Some(job.point.1);
    row.q = job.q;
    row.lhs = Some(rep.lhs);
    row.bound = Some(rep.bound);
    row.slack = Some(rep.slack);
    row.tightness = Some(rep.tightness);
    row.hypothesis_status = Some(rep.hypothesis.label().to_string());
    row.status = if rep.hypothesis == HypothesisStatus::NotVerified {
        Status::Warning
    } else if cfg.tolerances.le(rep.lhs, rep.bound) {
        Status::Pass
    } else {
        Status::Fail
    };
    row
}

pub fn bounds(cfg: &SweepConfig) -> CliResult<Report> {
    let theorems = if cfg.theorems.is_empty() {
        vec![Theorem::T1]
    } else {
        cfg.theorems.clone()
    };
    let jobs = bound_jobs(cfg, &theorems)?;
    let integ = integrator(cfg);
    let rows = map_ordered(&jobs, |job| -> CliResult<Row> {
        let rep = evaluate(job, &integ)?;
        Ok(bound_row(cfg, job, &rep))
    })?;
    Ok(Report::new(
        "bounds",
        rows.into_iter().collect::<CliResult<_>>()?,
    ))
}

pub fn chain(cfg: &SweepConfig) -> CliResult<Report> {
    let integ = integrator(cfg);
    let mut jobs = Vec::new();
    for s in surfaces(cfg)? {
        for r in &cfg.rects {
            jobs.push((s.clone(), *r));
        }
    }
    let blocks = map_ordered(&jobs, |(s, r)| -> CliResult<Vec<Row>> {
        let rep = chain_1_1(s, r, &integ, &cfg.tolerances)?;
        let hypothesis = rep.hypothesis;
        let mut rows = Vec::with_capacity(5);
        for (i, level) in hadamard_coord::inequalities::CHAIN_LEVELS
            .iter()
            .enumerate()
        {
            let mut row = Row::new(s.name(), rect_label(r), format!("chain:{level}"));
            row.lhs = Some(rep.values[i]);
            row.hypothesis_status = Some(hypothesis.label().to_string());
            if i < 4 {
                row.bound = Some(rep.values[i + 1]);
                row.slack = Some(rep.values[i + 1] - rep.values[i]);
                row.status = match (rep.ordered[i], hypothesis) {
                    (true, _) => Status::Pass,
                    (false, HypothesisStatus::Holds) => Status::Fail,
                    (false, HypothesisStatus::NotVerified) => Status::Warning,
                };
            }
            rows.push(row);
        }
        Ok(rows)
    })?;
    let mut rows = Vec::new();
    for block in blocks {
        rows.extend(block?);
    }
    Ok(Report::new("chain", rows))
}

pub fn check_convexity(cfg: &SweepConfig) -> CliResult<Report> {
    for &q in &cfg.q_values {
        if q < 1.0 {
            return Err(CliError::usage(format!(
                "hypothesis exponent must satisfy q >= 1, got {q}"
            )));
        }
    }
    let lambdas = default_lambdas::<f64>();
    let mut jobs = Vec::new();
    for s in surfaces(cfg)? {
        for r in &cfg.rects {
            jobs.push((s.clone(), *r));
        }
    }
    let grid = if cfg.point.is_some() {
        DEFAULT_HYPOTHESIS_GRID
    } else {
        cfg.grid
    };
    let blocks = map_ordered(&jobs, |(s, r)| {
        let f = |u, v| s.eval(u, v);
        let mut verdicts = vec![
            (
                "full-convexity".to_string(),
                None,
                check_full_convexity(f, r, grid, &lambdas, None),
            ),
            (
                "coordinate-convexity".to_string(),
                None,
                check_coordinate_convexity(f, r, grid, &lambdas, None),
            ),
            (
                "hypothesis".to_string(),
                None,
                check_hypothesis(s, r, None, grid, None),
            ),
        ];
        for &q in &cfg.q_values {
            verdicts.push((
                "hypothesis".to_string(),
                Some(q),
                check_hypothesis(s, r, Some(q), grid, None),
            ));
        }
        verdicts
            .into_iter()
            .map(|(label, q, v)| {
                let mut row = Row::new(s.name(), rect_label(r), label);
                row.q = q;
                row.lhs = Some(v.worst_violation);
                row.bound = Some(v.tolerance);
                row.slack = Some(v.tolerance - v.worst_violation);
                row.hypothesis_status =
                    Some(HypothesisStatus::from_holds(v.holds).label().to_string());
                row.status = if v.holds {
                    Status::Pass
                } else {
                    Status::Warning
                };
                row
            })
            .collect::<Vec<_>>()
    })?;
    Ok(Report::new(
        "check-convexity",
        blocks.into_iter().flatten().collect(),
    ))
}

pub fn tighten(cfg: &SweepConfig) -> CliResult<Report> {
    if cfg.functions.len() != 1 || cfg.rects.len() != 1 {
        return Err(CliError::usage(
            "tighten takes exactly one --fn and one --rect",
        ));
    }
    let theorem = match cfg.theorems.as_slice() {
        [] => Theorem::T1,
        [t] if !t.is_corollary() => *t,
        _ => return Err(CliError::usage("tighten takes one of T1, T2, T3")),
    };
    let q = match (theorem.needs_q(), cfg.q_values.as_slice()) {
        (false, _) => None,
        (true, [q]) => {
            check_exponent(theorem, *q)?;
            Some(*q)
        }
        (true, _) => return Err(CliError::usage(format!("{theorem} needs exactly one --q"))),
    };
    let surface = catalog_lookup::<f64>(&cfg.functions[0])?.surface;
    let rect = cfg.rects[0];
    let candidates: Vec<EvalPoint<f64>> = rect.interior_grid(cfg.grid);
    let values = map_ordered(&candidates, |p| -> CliResult<f64> {
        Ok(match theorem {
            Theorem::T1 => t1_bound(&surface, &rect, p),
            Theorem::T2 => t2_bound(
                &surface,
                &rect,
                p,
                &HolderExponents::from_q(q.unwrap_or(2.0))?,
            ),
            _ => t3_bound(&surface, &rect, p, q.unwrap_or(1.0))?,
        })
    })?;
    // Candidates come x-major, so the first strict minimum is the
    // lexicographically smallest among ties.
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    let (i, _) = best.expect("grid >= 1");
    let p = candidates[i];
    let job = Job {
        surface,
        rect,
        point: (p.x(), p.y()),
        theorem,
        q,
    };
    let rep = evaluate(&job, &integrator(cfg))?;
    Ok(Report::new("tighten", vec![bound_row(cfg, &job, &rep)]))
}

/// Catalog listing: name, formula and declared facts.
pub fn list_functions() -> Vec<[String; 3]> {
    CATALOG
        .iter()
        .map(|(name, formula)| {
            let entry = catalog_lookup::<f64>(name).expect("catalog names resolve");
            let facts = entry
                .expected_properties
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            [name.to_string(), formula.to_string(), facts]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SweepArgs;

    #[test]
    fn failed_hypothesis_gives_warning() {
        let cfg = SweepConfig::resolve(&SweepArgs::default(), 3).unwrap();
        // D = cos(u) cos(v) is concave along each axis near the origin.
        let surface = Surface::new("sinsin", |u: f64, v: f64| u.sin() * v.sin())
            .with_mixed(|u, v| u.cos() * v.cos());
        let rect = Rectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let job = Job {
            surface,
            rect,
            point: (0.0, 0.0),
            theorem: Theorem::T1,
            q: None,
        };
        let rep = evaluate(&job, &Integrator::default()).unwrap();
        assert_eq!(rep.hypothesis, HypothesisStatus::NotVerified);
        let mut forced = rep.clone();
        forced.lhs = forced.bound + 1.0;
        assert_eq!(bound_row(&cfg, &job, &forced).status, Status::Warning);
        forced.hypothesis = HypothesisStatus::Holds;
        assert_eq!(bound_row(&cfg, &job, &forced).status, Status::Fail);
    }

    #[test]
    fn bound_jobs_expand_q_only_where_needed() {
        let mut cfg = SweepConfig::resolve(&SweepArgs::default(), 2).unwrap();
        cfg.functions = vec!["product".into()];
        cfg.q_values = vec![1.5, 2.0];
        let jobs = bound_jobs(&cfg, &[Theorem::T1, Theorem::T3, Theorem::C1Part3]).unwrap();
        // 4 points for T1, 4 x 2 for T3, one substituted point for C1-3.
        assert_eq!(jobs.len(), 4 + 8 + 1);
        assert!(bound_jobs(&cfg, &[Theorem::C2Part1]).is_ok());
        cfg.q_values = vec![1.0];
        assert!(bound_jobs(&cfg, &[Theorem::C2Part1]).is_err());
        assert!(bound_jobs(&cfg, &[Theorem::T3]).is_ok());
        cfg.q_values = vec![0.5];
        assert!(bound_jobs(&cfg, &[Theorem::T3]).is_err());
    }
}
