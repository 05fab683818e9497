use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};
use trigonal::algebra::parse::parse_form;
use trigonal::algebra::{cubic_discriminant, BinaryForm, ExactField, Field, PrimeField, Rationals};
use trigonal::bundle::{codim_probe, exhaustive_probe, splitting_type, LinearMatrix, ProbeReport};
use trigonal::chow::{self, LatticeClass};
use trigonal::cover::{fiber_type, form_to_algebra, phi_degrees, smooth_check, TrigonalDatum};
use trigonal::cubic::{in_w, DualCubic};
use trigonal::verify;

use crate::output::{emit, CliError, Payload};
use crate::{BundleCmd, ChowCmd, CoverCmd, FieldSpec, Global};

type Out = Result<ExitCode, CliError>;

fn done(g: &Global, p: Payload) -> Out {
    emit(g.format, &p);
    Ok(ExitCode::SUCCESS)
}

fn record(json: Value, text: impl Into<String>) -> Payload {
    Payload::Record {
        json,
        text: text.into(),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn chow(g: &Global, cmd: ChowCmd) -> Out {
    match cmd {
        ChowCmd::ClassW => {
            let w = chow::class_of_w()?.w.to_string();
            done(g, record(json!({ "class": w }), w.clone()))
        }
        ChowCmd::ClassY { genus, symbolic: _ } => {
            let y = chow::class_of_y()?.y;
            match genus {
                Some(n) => class_y_at(g, &y, n),
                None => class_y_symbolic(g, &y),
            }
        }
        ChowCmd::Picard { from, to } => {
            if from > to {
                return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let rows = chow::picard_table(from, to)?;
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.g.to_string(), r.a.to_string(), r.b.to_string(), r.group.to_string()])
                .collect();
            let json = Value::Array(
                rows.iter()
                    .map(|r| json!({ "g": r.g, "a": r.a.to_string(), "b": r.b.to_string(), "group": r.group.to_string() }))
                    .collect(),
            );
            done(
                g,
                Payload::Table {
                    headers: vec!["g", "a", "b", "group"],
                    rows: table,
                    json,
                },
            )
        }
    }
}

fn class_y_at(g: &Global, y: &LatticeClass, n: i64) -> Out {
    let [d, gm, s] = y.at(n)?;
    let (a, b) = chow::kernel_coordinates(y, n)?;
    let restriction = chow::restriction_to_gm(y).eval_int(n);
    let group = chow::quotient_group(&a, &b);
    let json = json!({
        "g": n,
        "delta1": d.to_string(),
        "gamma1": gm.to_string(),
        "sigma1": s.to_string(),
        "kernel_coords": [a.to_string(), b.to_string()],
        "restriction_check": { "value": restriction.to_string(), "in_kernel": restriction == BigRational::from_integer(0.into()) },
        "group": group.to_string(),
    });
    let text = format!("[Y_{n}] = {d}*delta1 + {gm}*gamma1 + {s}*sigma1 = {a}*delta1 + {b}*q1; Pic = {group}");
    done(g, record(json, text))
}

fn class_y_symbolic(g: &Global, y: &LatticeClass) -> Out {
    let restriction = chow::restriction_to_gm(y);
    let half = BigRational::new(1.into(), 2.into());
    let json = json!({
        "delta1": y.delta1.to_string(),
        "gamma1": y.gamma1.to_string(),
        "sigma1": y.sigma1.to_string(),
        "kernel_coords": {
            "odd": [y.delta1.to_string(), y.gamma1.scale(&half).to_string()],
            "even": [y.delta1.to_string(), y.gamma1.to_string()],
        },
        "restriction_check": { "value": restriction.to_string(), "in_kernel": restriction.is_zero() },
    });
    done(g, record(json, format!("[Y_g] = {y}")))
}

fn with_field<T>(
    spec: FieldSpec,
    q: impl FnOnce(Rationals) -> Result<T, CliError>,
    p: impl FnOnce(PrimeField) -> Result<T, CliError>,
) -> Result<T, CliError> {
    match spec {
        FieldSpec::Q => q(Rationals),
        FieldSpec::P(n) => p(PrimeField::new(n)?),
    }
}

pub fn cover(g: &Global, cmd: CoverCmd) -> Out {
    let payload = match cmd {
        CoverCmd::Singular { f, g: eps } => with_field(g.field, |k| singular(k, &f, &eps), |k| singular(k, &f, &eps))?,
        CoverCmd::Build { cubic } => with_field(g.field, |k| build(k, &cubic), |k| build(k, &cubic))?,
        CoverCmd::Smooth { input } => {
            let raw: DatumJson = read_json(&input)?;
            with_field(g.field, |k| smooth(k, &raw), |k| smooth(k, &raw))?
        }
    };
    done(g, payload)
}

const X: [&str; 2] = ["x1", "x2"];

fn singular<F: ExactField>(k: F, f: &str, eps: &str) -> Result<Payload, CliError> {
    let f = parse_form(&k, f, X, Some(3))?;
    let e = parse_form(&k, eps, X, Some(3))?;
    let v = in_w(&DualCubic::new(f, e)?);
    let witness = v.witness().map(|p| p.render());
    let text = match &witness {
        Some(w) => format!("in W, witness {w}"),
        None if v.in_w => "in W, no rational witness".to_string(),
        None => "not in W".to_string(),
    };
    Ok(record(json!({ "in_W": v.in_w, "witness": witness }), text))
}

fn build<F: ExactField>(k: F, cubic: &str) -> Result<Payload, CliError> {
    let f = parse_form(&k, cubic, X, Some(3))?;
    let alg = form_to_algebra(&f)?;
    let render = |v: &[F::Elem; 3]| v.iter().map(|x| k.render(x)).collect::<Vec<_>>();
    let disc = k.render(&cubic_discriminant(&f)?);
    let kind = fiber_type(&f)?.as_str();
    let json = json!({
        "basis": ["1", "omega", "theta"],
        "omega_omega": render(alg.ww()),
        "omega_theta": render(alg.wt()),
        "theta_theta": render(alg.tt()),
        "discriminant": disc,
        "fiber_type": kind,
    });
    let text = format!(
        "omega^2 = {:?}\nomega*theta = {:?}\ntheta^2 = {:?}\ndiscriminant {disc}, {kind}",
        render(alg.ww()),
        render(alg.wt()),
        render(alg.tt())
    );
    Ok(record(json, text))
}

#[derive(Deserialize)]
struct DatumJson {
    m: i64,
    n: i64,
    phi: [String; 4],
}

fn smooth<F: ExactField>(k: F, raw: &DatumJson) -> Result<Payload, CliError> {
    let degs = phi_degrees(raw.m, raw.n);
    let mut forms = Vec::with_capacity(4);
    for (text, d) in raw.phi.iter().zip(degs) {
        forms.push(parse_form(&k, text, ["t0", "t1"], Some(d.max(0) as usize))?);
    }
    let phi: [BinaryForm<F>; 4] = forms.try_into().expect("four forms");
    let datum = TrigonalDatum::new(raw.m, raw.n, phi)?;
    let v = smooth_check(&datum)?;
    let points: Vec<Value> = v
        .singular_points
        .iter()
        .map(|p| json!({ "base": p.render_base(), "fiber": p.fiber.render() }))
        .collect();
    let text = if v.smooth {
        "smooth".to_string()
    } else if v.everywhere_singular {
        "singular over every base point".to_string()
    } else {
        let listed: Vec<String> = v
            .singular_points
            .iter()
            .map(|p| format!("{} over {}", p.fiber.render(), p.render_base()))
            .collect();
        format!("singular: {}{}", listed.join(", "), if v.unlisted { " (and irrational points)" } else { "" })
    };
    let json = json!({
        "smooth": v.smooth,
        "everywhere_singular": v.everywhere_singular,
        "unlisted": v.unlisted,
        "singular_points": points,
    });
    Ok(record(json, text))
}

#[derive(Deserialize)]
struct MatrixJson {
    r: usize,
    d: usize,
    entries: Vec<Vec<[Value; 2]>>,
}

fn scalar<F: Field>(k: &F, v: &Value) -> Result<F::Elem, CliError> {
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(CliError::Input(format!("expected an integer or rational string, got {other}"))),
    };
    let q = BigRational::from_str(&text).map_err(|_| CliError::Input(format!("not a rational number: {text}")))?;
    k.from_rational(&q)
        .ok_or_else(|| CliError::Input(format!("{text} is not defined in the chosen field")))
}

fn load_matrix<F: Field>(k: F, path: &Path) -> Result<LinearMatrix<F>, CliError> {
    let raw: MatrixJson = read_json(path)?;
    let mut rows = Vec::with_capacity(raw.entries.len());
    for row in &raw.entries {
        let mut out = Vec::with_capacity(row.len());
        for [a, b] in row {
            out.push((scalar(&k, a)?, scalar(&k, b)?));
        }
        rows.push(out);
    }
    Ok(LinearMatrix::from_coeffs(k, raw.r, raw.d, rows)?)
}

fn split<F: Field>(k: F, path: &Path) -> Result<Payload, CliError> {
    let s = splitting_type(&load_matrix(k, path)?)?;
    let text = format!("{s:?}");
    Ok(record(json!({ "splitting": s }), text))
}

fn degeneracy<F: Field>(k: F, path: &Path) -> Result<Payload, CliError> {
    let ok = load_matrix(k, path)?.is_nondegenerate();
    Ok(record(
        json!({ "nondegenerate": ok }),
        if ok { "nondegenerate" } else { "degenerate" },
    ))
}

fn probe_payload(rep: &ProbeReport, p: u64, exhaustive: bool) -> Payload {
    let rows: Vec<Vec<String>> = rep
        .histogram
        .iter()
        .map(|(s, c)| vec![format!("{s:?}").replace(' ', ""), c.to_string()])
        .collect();
    let hist: Vec<Value> = rep
        .histogram
        .iter()
        .map(|(s, c)| json!({ "splitting": s, "count": c }))
        .collect();
    let json = json!({
        "p": p,
        "exhaustive": exhaustive,
        "trials": rep.trials,
        "degenerate": rep.degenerate,
        "degenerate_fraction": rep.degenerate_fraction(),
        "histogram": hist,
        "mode": rep.mode(),
    });
    let mut table = vec![
        vec!["trials".to_string(), rep.trials.to_string()],
        vec!["degenerate".to_string(), rep.degenerate.to_string()],
        vec!["fraction".to_string(), format!("{:.6}", rep.degenerate_fraction())],
    ];
    table.extend(rows);
    Payload::Table {
        headers: vec!["item", "count"],
        rows: table,
        json,
    }
}

pub fn bundle(g: &Global, cmd: BundleCmd) -> Out {
    let payload = match cmd {
        BundleCmd::Split { input } => with_field(g.field, |k| split(k, &input), |k| split(k, &input))?,
        BundleCmd::Degeneracy { input } => {
            with_field(g.field, |k| degeneracy(k, &input), |k| degeneracy(k, &input))?
        }
        BundleCmd::Probe {
            r,
            d,
            p,
            trials,
            exhaustive,
        } => {
            if r == 0 || d == 0 {
                return Err(CliError::Usage("--r and --d must be positive".into()));
            }
            let rep = if exhaustive {
                exhaustive_probe(r, d, p, true)?
            } else {
                codim_probe(r, d, p, trials, g.seed, true)?
            };
            probe_payload(&rep, p, exhaustive)
        }
    };
    done(g, payload)
}

pub fn verify(g: &Global, only: Option<Vec<String>>) -> Out {
    let outcomes = verify::run_all(only.as_deref())?;
    let all = outcomes.iter().all(|o| o.passed);
    let rows: Vec<Vec<String>> = outcomes
        .iter()
        .map(|o| {
            vec![
                o.index.to_string(),
                o.key.to_string(),
                if o.passed { "pass" } else { "fail" }.to_string(),
                format!("{:.3}", o.elapsed.as_secs_f64()),
                o.detail.clone(),
            ]
        })
        .collect();
    let json = Value::Array(
        outcomes
            .iter()
            .map(|o| {
                json!({
                    "index": o.index,
                    "key": o.key,
                    "title": o.title,
                    "passed": o.passed,
                    "seconds": o.elapsed.as_secs_f64(),
                    "budget_seconds": o.budget.as_secs(),
                    "detail": o.detail,
                })
            })
            .collect(),
    );
    let payload = match g.format {
        crate::output::Format::Text => record(
            json.clone(),
            outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n"),
        ),
        _ => Payload::Table {
            headers: vec!["index", "key", "status", "seconds", "detail"],
            rows,
            json,
        },
    };
    emit(g.format, &payload);
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
