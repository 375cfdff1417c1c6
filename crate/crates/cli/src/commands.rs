//! Subcommand bodies. Each returns the rendered output file.

use lzs_core::analysis::{
    classify_regime, format_float, measure_resonance_width, scan_resonance_map, ScanConfig,
    ScanResult,
};
use lzs_core::dynamics::{propagate_exact, DriveParams, MIN_STEPS_PER_PERIOD};
use lzs_core::rwa::{cdt_amplitudes, rabi_weak_driving, rwa_predict};
use lzs_core::transfer::{propagate_tm, tm_predict, tm_slow_resonance_lhs};
use lzs_core::QubitState;
use serde_json::{json, Value};

use crate::exit::CliError;
use crate::settings::{parse_axis, parse_omega_grid, Format, Settings};

pub const GENERATED_BY: &str = concat!("lzs ", env!("CARGO_PKG_VERSION"));
const DEFAULT_CYCLES: usize = 20;
const DEFAULT_KMAX: u32 = 5;

/// Converts outputs from units of `Delta` into the requested unit.
#[derive(Clone, Copy)]
struct Units(f64);

impl Units {
    fn energy(self, x: f64) -> f64 {
        x * self.0
    }

    fn time(self, t: f64) -> f64 {
        t / self.0
    }
}

fn meta(s: &Settings, command: &str, p: Option<&DriveParams>) -> Result<Value, CliError> {
    let mut config = serde_json::to_value(s).expect("settings serialize");
    if let Some(map) = config.as_object_mut() {
        map.retain(|_, v| !v.is_null());
    }
    let mut m = json!({
        "generated_by": GENERATED_BY,
        "command": command,
        "delta": s.delta()?,
        "config": config,
    });
    if let Some(p) = p {
        m["params"] =
            json!({ "eps0": p.epsilon0, "amp": p.amplitude, "omega": p.omega, "phi": p.phi });
        m["integrator"] = json!({
            "method": "exponential-midpoint",
            "steps_per_period": s.steps_per_period(),
        });
    }
    Ok(m)
}

fn check_steps(s: &Settings) -> Result<usize, CliError> {
    let n = s.steps_per_period();
    if n < MIN_STEPS_PER_PERIOD {
        return Err(CliError::Config(format!(
            "steps-per-period must be at least {MIN_STEPS_PER_PERIOD}, got {n}"
        )));
    }
    Ok(n)
}

fn require_crossings(p: &DriveParams) -> Result<(), CliError> {
    if p.amplitude <= p.epsilon0 {
        return Err(CliError::Regime(format!(
            "transfer-matrix mode needs A > eps0 so the bias crosses zero (A = {}, eps0 = {})",
            p.amplitude, p.epsilon0
        )));
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn json_only(s: &Settings, command: &str) -> Result<(), CliError> {
    if s.format == Some(Format::Csv) {
        return Err(CliError::Config(format!("{command} writes JSON only")));
    }
    Ok(())
}

fn csv_table(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

pub fn simulate(s: &Settings) -> Result<String, CliError> {
    let p = s.drive(&[])?;
    let units = Units(s.delta()?);
    let steps = check_steps(s)?;
    let cycles = s.cycles.unwrap_or(DEFAULT_CYCLES);
    if cycles == 0 {
        return Err(CliError::Config("cycles must be at least 1".into()));
    }
    let with_tm = s.tm.unwrap_or(false);
    if with_tm {
        require_crossings(&p)?;
    }
    let ts = propagate_exact(&p, &QubitState::DOWN, cycles as f64 * p.period(), steps)?;
    let tm = if with_tm {
        Some(propagate_tm(&p, &QubitState::DOWN, cycles)?)
    } else {
        None
    };

    if s.format_or(Format::Csv) == Format::Json {
        let mut v = json!({
            "meta": meta(s, "simulate", Some(&p))?,
            "t": ts.times().map(|t| units.time(t)).collect::<Vec<_>>(),
            "P_up": ts.values,
        });
        v["meta"]["cycles"] = json!(cycles);
        if let Some(tm) = &tm {
            v["tm"] = json!({
                "t": tm.times().map(|t| units.time(t)).collect::<Vec<_>>(),
                "P_up": tm.values,
            });
        }
        return Ok(json_text(&v));
    }
    let header = if tm.is_some() {
        "t,P_up,P_up_tm"
    } else {
        "t,P_up"
    };
    let rows = ts.times().zip(&ts.values).enumerate().map(|(i, (t, v))| {
        let mut row = vec![format_float(units.time(t)), format_float(*v)];
        if let Some(tm) = &tm {
            let x = if i % steps == 0 {
                tm.values[i / steps]
            } else {
                f64::NAN
            };
            row.push(format_float(x));
        }
        row
    });
    Ok(csv_table(header, rows))
}

pub fn predict(s: &Settings) -> Result<String, CliError> {
    json_only(s, "predict")?;
    let p = s.drive(&[])?;
    let u = Units(s.delta()?);
    let regime = classify_regime(&p);
    let rwa = rwa_predict(&p);
    let rabi = rabi_weak_driving(&p);
    let crosses = p.amplitude > p.epsilon0;
    if s.tm.unwrap_or(false) {
        require_crossings(&p)?;
    }
    let (tm, slow) = if crosses {
        let t = tm_predict(&p)?;
        let sl = tm_slow_resonance_lhs(&p)?;
        let tm = json!({
            "zeta_fc": t.decomposition.zeta_fc,
            "theta_fc": t.decomposition.theta_fc,
            "phi_fc": t.decomposition.phi_fc,
            "global_phase": t.decomposition.global_phase,
            "omega_osc": u.energy(t.omega_osc),
            "omega_fast": t.omega_fast.map(|w| u.energy(w)),
            "resonance_n": t.resonance_n,
            "resonance_residual": t.resonance_residual,
            "width": t.width.map(|w| u.energy(w)),
            "transition_probability": t.crossing.transition_probability(),
            "stokes_phase": t.crossing.stokes_phase(),
            "sweep_rate": u.energy(u.energy(t.crossing.sweep_rate)),
        });
        let slow = json!({
            "lhs": sl.lhs,
            "nearest_integer": sl.nearest_integer,
            "residual": sl.residual,
            "theta_fc_refined": sl.theta_fc_refined,
            "in_slow_regime": sl.in_slow_regime,
        });
        (tm, slow)
    } else {
        (Value::Null, Value::Null)
    };
    let v = json!({
        "meta": meta(s, "predict", Some(&p))?,
        "regime": regime.label.as_str(),
        "rwa": {
            "n": rwa.n,
            "detuning": u.energy(rwa.detuning),
            "omega_osc": u.energy(rwa.omega_osc),
            "width": rwa.width.map(|w| u.energy(w)),
            "valid": rwa.validity.is_valid(),
            "validity": rwa.validity,
            "reason": rwa.reason,
        },
        "rabi": {
            "omega_res": u.energy(rabi.omega_res),
            "omega_rabi": u.energy(rabi.omega_rabi),
            "valid": rabi.valid,
        },
        "tm": tm,
        "slow": slow,
    });
    Ok(json_text(&v))
}

pub fn classify(s: &Settings) -> Result<String, CliError> {
    let p = s.drive(&[])?;
    let r = classify_regime(&p);
    let tm = r.tm.map_or("", |t| t.as_str());
    if s.format_or(Format::Json) == Format::Csv {
        let row = vec![
            r.label.as_str().to_string(),
            format_float(r.a_over_delta),
            format_float(r.omega_over_delta),
            format_float(r.a_omega_over_delta2),
            r.rabi.to_string(),
            r.rwa.to_string(),
            tm.to_string(),
        ];
        return Ok(csv_table(
            "label,a_over_delta,omega_over_delta,a_omega_over_delta2,rabi,rwa,tm",
            [row],
        ));
    }
    let v = json!({
        "meta": meta(s, "classify", Some(&p))?,
        "label": r.label.as_str(),
        "a_over_delta": r.a_over_delta,
        "omega_over_delta": r.omega_over_delta,
        "a_omega_over_delta2": r.a_omega_over_delta2,
        "rabi": r.rabi,
        "rwa": r.rwa,
        "tm": r.tm.map(|t| t.as_str()),
    });
    Ok(json_text(&v))
}

pub fn cdt(s: &Settings) -> Result<String, CliError> {
    let omega = s
        .omega
        .ok_or_else(|| CliError::Config("missing --omega".into()))?;
    let u = Units(s.delta()?);
    let kmax = s.kmax.unwrap_or(DEFAULT_KMAX);
    let amps = cdt_amplitudes(omega, kmax)?;
    if s.format_or(Format::Csv) == Format::Json {
        let v = json!({
            "meta": meta(s, "cdt", None)?,
            "omega": omega,
            "amplitudes": amps.iter().map(|a| u.energy(*a)).collect::<Vec<_>>(),
        });
        return Ok(json_text(&v));
    }
    let rows = amps
        .iter()
        .enumerate()
        .map(|(k, a)| vec![(k + 1).to_string(), format_float(u.energy(*a))]);
    Ok(csv_table("k,amplitude", rows))
}

pub fn width(s: &Settings) -> Result<String, CliError> {
    let p = s.drive(&[lzs_core::analysis::Axis::Omega])?;
    let u = Units(s.delta()?);
    let steps = check_steps(s)?;
    let n = s.n.ok_or_else(|| CliError::Config("missing --n".into()))?;
    let spec = s
        .omega_grid
        .as_deref()
        .ok_or_else(|| CliError::Config("missing --omega-grid".into()))?;
    let grid = parse_omega_grid(spec)?;
    let w = measure_resonance_width(&p, n, &grid, steps)?;
    if s.format_or(Format::Json) == Format::Csv {
        let rows = grid
            .iter()
            .zip(&w.amplitudes)
            .map(|(o, a)| vec![format_float(u.energy(*o)), format_float(*a)]);
        return Ok(csv_table("omega,amplitude", rows));
    }
    let v = json!({
        "meta": meta(s, "width", Some(&p))?,
        "n": n,
        "hwhm": u.energy(w.hwhm),
        "omega_peak": u.energy(w.omega_peak),
        "peak_amplitude": w.peak_amplitude,
        "duration": u.time(w.duration),
        "omega": grid.iter().map(|o| u.energy(*o)).collect::<Vec<_>>(),
        "amplitude": w.amplitudes,
    });
    Ok(json_text(&v))
}

fn rescale(r: &mut ScanResult, u: Units) {
    for c in &mut r.cells {
        c.axis1 = u.energy(c.axis1);
        c.axis2 = u.energy(c.axis2);
        c.omega_rwa = u.energy(c.omega_rwa);
        c.omega_tm = u.energy(c.omega_tm);
        if let Some(e) = &mut c.estimate {
            e.omega_est = u.energy(e.omega_est);
        }
    }
}

pub fn scan(s: &Settings) -> Result<String, CliError> {
    let missing = |k: &str| CliError::Config(format!("missing --{k}"));
    let a1 = parse_axis(s.axis1.as_deref().ok_or_else(|| missing("axis1"))?)?;
    let a2 = parse_axis(s.axis2.as_deref().ok_or_else(|| missing("axis2"))?)?;
    let p = s.drive(&[a1.axis, a2.axis])?;
    let u = Units(s.delta()?);
    let mut cfg = ScanConfig::new(p, a1, a2)?;
    cfg.steps_per_period = check_steps(s)?;
    let mut result = scan_resonance_map(&cfg)?;
    if u.0 != 1.0 {
        rescale(&mut result, u);
    }
    if s.format_or(Format::Csv) == Format::Csv {
        return Ok(result.to_csv());
    }
    let rows: Vec<Value> = result
        .rows()
        .into_iter()
        .map(|r| {
            json!({
                "axis1": r.axis1,
                "axis2": r.axis2,
                "omega_est": r.omega_est,
                "amplitude": r.amplitude,
                "omega_rwa": r.omega_rwa,
                "omega_tm": r.omega_tm,
                "slow_lhs": r.slow_lhs,
                "flags": r.flags,
            })
        })
        .collect();
    let mut m = meta(s, "scan", Some(&p))?;
    m["axis1"] = json!(cfg.axis1.axis.name());
    m["axis2"] = json!(cfg.axis2.axis.name());
    m["sizing"] = serde_json::to_value(cfg.sizing).expect("sizing serializes");
    Ok(json_text(&json!({ "meta": m, "rows": rows })))
}
