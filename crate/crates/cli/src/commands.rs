//! The batch commands: classify, pressure curves, residual-entropy upper
//! bounds, annealing diagnostics, fixture dumps and the boundary search.

use groundstate_core::ergodic::{
    classify, residual_entropy_zero_temp, zero_temperature_measure,
};
use groundstate_core::experiments;
use groundstate_core::measures::{measure_integral, w1_distance, InvariantMeasure};
use groundstate_core::num::{rat_pow2, Rat};
use groundstate_core::potential::Potential;
use groundstate_core::sft::{Sft, Word};
use groundstate_core::thermo::{residual_entropy_upper, PressureMachine};

use crate::csvfmt::{dec_hi, dec_lo, enclosure_cols, Csv};
use crate::json::{
    classification_json, encode_input, format_rat, parse_rat, parse_word, ClassificationJson,
};
use crate::CliError;

/// Exit status semantics: resolved / undetermined / input error.
pub enum Outcome {
    Resolved(String),
    Undetermined(String),
}

pub fn cmd_classify(sft: &Sft, phi: &Potential, precision: u32) -> Result<Outcome, CliError> {
    let c = classify(sft, phi).map_err(CliError::from_core)?;
    if !c.is_resolved() {
        let json = classification_json(&c, None, None);
        return Ok(Outcome::Undetermined(pretty(&json)?));
    }
    let residual = residual_entropy_zero_temp(&c, precision).map_err(CliError::from_core)?;
    let measure = match zero_temperature_measure(&c, precision) {
        Ok(m) => Some(m),
        Err(groundstate_core::Error::NotResolved) => None,
        Err(e) => return Err(CliError::from_core(e)),
    };
    let json = classification_json(&c, Some(&residual), measure.as_ref());
    Ok(Outcome::Resolved(pretty(&json)?))
}

fn pretty(json: &ClassificationJson) -> Result<String, CliError> {
    serde_json::to_string_pretty(json).map_err(|e| CliError::Input(e.to_string()))
}

pub fn cmd_pressure_curve(
    sft: &Sft,
    phi: &Potential,
    betas: &[Rat],
    precision: u32,
) -> Result<String, CliError> {
    let machine = PressureMachine::new(sft, phi).map_err(CliError::from_core)?;
    let mut sorted: Vec<Rat> = betas.to_vec();
    sorted.sort();
    // Rows are independent; evaluate them concurrently and emit in beta
    // order.
    let rows: Vec<Result<Vec<String>, CliError>> = std::thread::scope(|scope| {
        let machine = &machine;
        let handles: Vec<_> = sorted
            .iter()
            .map(|beta| {
                scope.spawn(move || -> Result<Vec<String>, CliError> {
                    let pt = machine.pressure_point(beta, precision).map_err(CliError::from_core)?;
                    let (p_lo, p_hi) = enclosure_cols(&pt.pressure);
                    let (dm_lo, dm_hi) = enclosure_cols(&pt.d_minus);
                    let (dp_lo, dp_hi) = enclosure_cols(&pt.d_plus);
                    let (h_lo, h_hi, flag) = match &pt.entropy {
                        Some(h) => {
                            let (lo, hi) = enclosure_cols(h);
                            (lo, hi, "ok".to_string())
                        }
                        None => (String::new(), String::new(), "not_separated".to_string()),
                    };
                    Ok(vec![
                        format_rat(beta),
                        p_lo,
                        p_hi,
                        dm_lo,
                        dm_hi,
                        dp_lo,
                        dp_hi,
                        h_lo,
                        h_hi,
                        flag,
                    ])
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("row worker panicked")).collect()
    });
    let mut csv = Csv::new("beta,P_lo,P_hi,dPm_lo,dPm_hi,dPp_lo,dPp_hi,h_lo,h_hi,flags");
    for row in rows {
        csv.row(&row?);
    }
    Ok(csv.finish())
}

pub fn cmd_residual_upper(sft: &Sft, phi: &Potential, steps: u32) -> Result<String, CliError> {
    let bounds = residual_entropy_upper(sft, phi, steps).map_err(CliError::from_core)?;
    // comment() prepends, so the second line goes first.
    let mut csv = Csv::new("n,beta_lo,beta_hi,sandwich_lo,sandwich_hi,u_n,running_min")
        .comment("semi-computable: certified upper bounds, no convergence rate guaranteed")
        .comment("u_n are upper bounds on the residual entropy;");
    for s in &bounds {
        let (slo, shi) = enclosure_cols(&s.sandwich);
        csv.row(&[
            s.n.to_string(),
            format_rat(&s.beta_lo),
            format_rat(&s.beta_hi),
            slo,
            shi,
            dec_hi(&s.upper),
            dec_hi(&s.running_min),
        ]);
    }
    Ok(csv.finish())
}

pub fn cmd_anneal(
    sft: &Sft,
    phi: &Potential,
    betas: &[Rat],
    precision: u32,
    depth: usize,
) -> Result<String, CliError> {
    let machine = PressureMachine::new(sft, phi).map_err(CliError::from_core)?;
    // Zero-temperature data for the W1 column, when resolvable.
    let limit_measure = match classify(sft, phi) {
        Ok(c) if c.is_resolved() => match zero_temperature_measure(&c, precision) {
            Ok(m @ InvariantMeasure::Periodic(_)) | Ok(m @ InvariantMeasure::Markov(_)) => Some(m),
            _ => None,
        },
        _ => None,
    };
    let htop = sft.topological_entropy(precision).map_err(CliError::from_core)?;
    let g = groundstate_core::ergodic::WeightedBlockGraph::new(sft, phi)
        .map_err(CliError::from_core)?;
    let (_, b) = groundstate_core::ergodic::extreme_means(&g);
    let mut sorted: Vec<Rat> = betas.to_vec();
    sorted.sort();
    struct AnnealRow {
        beta: Rat,
        mu: (Rat, Rat),
        h: (Rat, Rat),
        gap_ok: bool,
        w1: (String, String),
    }
    let rows: Vec<Result<AnnealRow, CliError>> = std::thread::scope(|scope| {
        let machine = &machine;
        let htop = &htop;
        let b = &b;
        let limit_measure = &limit_measure;
        let handles: Vec<_> = sorted
            .iter()
            .map(|beta| {
                scope.spawn(move || -> Result<AnnealRow, CliError> {
                    let eq = machine
                        .equilibrium_measure(beta, precision)
                        .map_err(CliError::from_core)?;
                    let markov = InvariantMeasure::Markov(eq.measure.clone());
                    let mu = measure_integral(&markov, phi).map_err(CliError::from_core)?;
                    let h =
                        machine.entropy_at_beta(beta, precision).map_err(CliError::from_core)?;
                    // Annealing gap: b - mu_beta(phi) <= htop/beta plus
                    // certification slack.
                    let slack =
                        rat_pow2(-(precision as i64) + 2) + &eq.measure.stationarity_defect;
                    let gap_ok = if beta > &Rat::from_integer(0.into()) {
                        let lhs = b.hi_rat() - mu.lo_rat();
                        let rhs = htop.hi_rat() / beta + &slack;
                        lhs <= rhs
                    } else {
                        true
                    };
                    let w1 = match limit_measure {
                        Some(limit) => {
                            let w = w1_distance(sft.theta(), &markov, limit, depth)
                                .map_err(CliError::from_core)?;
                            enclosure_cols(&w)
                        }
                        None => (String::new(), String::new()),
                    };
                    Ok(AnnealRow {
                        beta: beta.clone(),
                        mu: (mu.lo_rat(), mu.hi_rat()),
                        h: (h.lo_rat(), h.hi_rat()),
                        gap_ok,
                        w1,
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("row worker panicked")).collect()
    });
    // Monotonicity flags compare consecutive rows up to enclosure slack.
    let slack = rat_pow2(-(precision as i64) + 2);
    let mut csv = Csv::new("beta,mu_lo,mu_hi,h_lo,h_hi,mu_nondecreasing,h_nonincreasing,gap_ok,w1_lo,w1_hi");
    let mut prev: Option<(Rat, Rat)> = None;
    for row in rows {
        let row = row?;
        let (mu_flag, h_flag) = match &prev {
            None => (true, true),
            Some((pmu, ph)) => (&row.mu.1 >= &(pmu - &slack), &row.h.0 <= &(ph + &slack)),
        };
        prev = Some((row.mu.0.clone(), row.h.1.clone()));
        csv.row(&[
            format_rat(&row.beta),
            dec_lo(&row.mu.0),
            dec_hi(&row.mu.1),
            dec_lo(&row.h.0),
            dec_hi(&row.h.1),
            mu_flag.to_string(),
            h_flag.to_string(),
            row.gap_ok.to_string(),
            row.w1.0,
            row.w1.1,
        ]);
    }
    Ok(csv.finish())
}

/// Resolve a fixture name from the catalog.
pub fn fixture_by_name(name: &str) -> Result<(Sft, Potential, String), CliError> {
    if let Some(rest) = name.strip_prefix("intro:") {
        let (a1, a2) = rest
            .split_once(',')
            .ok_or_else(|| CliError::Input(format!("intro fixture needs two parameters: {name}")))?;
        let f = experiments::intro_fixture(parse_rat(a1)?, parse_rat(a2)?);
        return Ok((f.sft, f.phi, f.label));
    }
    if let Some(rest) = name.strip_prefix("star:") {
        let (n_str, which) = match rest.split_once(':') {
            Some((n, w)) => (n, w),
            None => (rest, "perturbed"),
        };
        let n: u32 = n_str
            .parse()
            .map_err(|_| CliError::Input(format!("bad star fixture index in {name}")))?;
        if n == 0 {
            return Err(CliError::Input("star fixture needs n >= 1".into()));
        }
        let (base, perturbed) = experiments::star_fixture(n);
        let f = match which {
            "base" => base,
            "perturbed" => perturbed,
            other => return Err(CliError::Input(format!("unknown star variant {other:?}"))),
        };
        return Ok((f.sft, f.phi, f.label));
    }
    Err(CliError::Input(format!(
        "unknown fixture {name:?}; expected intro:a1,a2 or star:n[:base|:perturbed]"
    )))
}

pub fn cmd_fixture(name: &str) -> Result<String, CliError> {
    let (sft, phi, _) = fixture_by_name(name)?;
    serde_json::to_string_pretty(&encode_input(&sft, &phi))
        .map_err(|e| CliError::Input(e.to_string()))
}

/// Boundary bisection on an intro fixture:
/// `boundary:a1,a2:y:m:eps:tol`.
pub fn cmd_boundary(spec: &str) -> Result<String, CliError> {
    let rest = spec
        .strip_prefix("boundary:")
        .ok_or_else(|| CliError::Input(format!("boundary spec must start with boundary: {spec}")))?;
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 5 {
        return Err(CliError::Input(
            "boundary spec is boundary:a1,a2:y:m:eps:tol".into(),
        ));
    }
    let (a1, a2) = parts[0]
        .split_once(',')
        .ok_or_else(|| CliError::Input("boundary needs intro parameters a1,a2".into()))?;
    let f = experiments::intro_fixture(parse_rat(a1)?, parse_rat(a2)?);
    let y: Word = parse_word(parts[1], f.sft.alphabet_size())?;
    let m: usize =
        parts[2].parse().map_err(|_| CliError::Input(format!("bad m in {spec:?}")))?;
    let eps = parse_rat(parts[3])?;
    let tol = parse_rat(parts[4])?;
    let b = experiments::boundary_t0(&f.sft, &f.phi, &y, m, &eps, &tol)
        .map_err(CliError::from_core)?;
    let out = serde_json::json!({
        "t0_lo": format_rat(&b.lo),
        "t0_hi": format_rat(&b.hi),
        "ell": b.ell,
        "x": crate::json::format_word(b.x.segment()),
        "z": crate::json::format_word(b.z.segment()),
    });
    serde_json::to_string_pretty(&out).map_err(|e| CliError::Input(e.to_string()))
}

/// Parse the `--betas` grid: either `b0,b1,...` or `geom:start,ratio,count`.
pub fn parse_betas(spec: &str) -> Result<Vec<Rat>, CliError> {
    if let Some(rest) = spec.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(CliError::Input("geometric grid is geom:start,ratio,count".into()));
        }
        let start = parse_rat(parts[0])?;
        let ratio = parse_rat(parts[1])?;
        let count: usize =
            parts[2].parse().map_err(|_| CliError::Input(format!("bad count in {spec:?}")))?;
        let mut out = Vec::with_capacity(count);
        let mut cur = start;
        for _ in 0..count {
            out.push(cur.clone());
            cur *= &ratio;
        }
        return Ok(out);
    }
    spec.split(',').map(parse_rat).collect()
}

/// The default annealing schedule `2^0 .. 2^10`.
pub fn default_anneal_schedule() -> Vec<Rat> {
    (0..=10).map(rat_pow2).collect()
}
