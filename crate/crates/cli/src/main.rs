use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use qmod::cexp::{check_axioms, AxiomSamples, AxiomStatus, BimoduleProjection, Element};
use qmod::expr::{parse_poly, parse_upoly, parse_weyl_auto, parse_with, ParseOptions};
use qmod::fock::{psd_truncated_check, witness_element};
use qmod::gramcert::{psd_exact_check, verify, GramCertificate, GramVerdict};
use qmod::linalg::PsdResult;
use qmod::matalg::{grid_points, ind_tr_refute, MatPoly, SemialgebraicSet};
use qmod::numfield::{hermite_form, in_induced_ordering, is_inducible, real_root_count, signature, NFElement, NumberField};
use qmod::polyalg::{first_negative_natural, Poly, PolyAlgebra};
use qmod::qmod::{graded_action, ind_membership, membership, IndMode, IndVerdict, Membership, QuadraticModule};
use qmod::weyl::n_algebra;
use qmod::{reproduce, sample, Error, Rational, Result};

mod descriptor;

#[derive(Parser)]
#[command(name = "qmod", version, about = "Exact positivity checks in *-algebras")]
struct Cli {
    /// One JSON object per check instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Reject decimal literals such as `1.4`.
    #[arg(long, global = true)]
    forbid_decimals: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a Gram certificate and the PSD-ness of its blocks.
    VerifyGram { cert: PathBuf },
    /// PSD table of the truncated Fock Gram matrices.
    Fock {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 10)]
        max_level: usize,
    },
    /// Is a polynomial in N nonnegative on the naturals?
    Posn0 {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Hermite form data of Q[x]/(P).
    Hermite {
        #[arg(long, allow_hyphen_values = true)]
        minpoly: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Search a grid over K_S for points where a matrix polynomial is not PSD.
    Matpsd {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated polynomials defining K_S = {p >= 0}.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        constraints: Vec<String>,
        /// `lo:hi`, once per variable.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: Vec<String>,
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
    /// Sample-based check of the conditional-expectation axioms.
    CeCheck {
        #[arg(long)]
        projection: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Graded action of e_k on N_lambda or N_inf.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        qm: String,
    },
    /// Run every reproduction check.
    ReproducePaper {
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Membership of a polynomial in N in a quadratic module.
    Member {
        #[arg(long)]
        qm: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Membership of a Weyl element in Ind Pos(N0), by Fock levels.
    Ind {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 10)]
        level: usize,
    },
}

struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Ctx {
    opts: ParseOptions,
}

impl Ctx {
    fn syntax(&self, src: &str) -> Result<()> {
        parse_with(src, self.opts).map(|_| ())
    }

    fn npoly(&self, src: &str) -> Result<Poly> {
        self.syntax(src)?;
        Ok(Poly::from_upoly(&n_algebra(), &parse_upoly(src, "N")?))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn verify_gram(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let cert = GramCertificate::from_json(&read(path)?, ctx.opts)?;
    let verdict = verify(&cert);
    let mut text = match &verdict {
        GramVerdict::Yes => "identity: verified\n".to_string(),
        GramVerdict::No { discrepancy } => format!("identity: refuted\ndiscrepancy: {discrepancy}\n"),
    };
    let mut blocks = Vec::new();
    let mut all_psd = true;
    for (i, b) in cert.blocks.iter().enumerate() {
        let n = b.matrix().nrows();
        match psd_exact_check(b.matrix())? {
            PsdResult::Psd => {
                text += &format!("block {}: {n}x{n} PSD\n", i + 1);
                blocks.push(json!({"block": i + 1, "psd": true}));
            }
            PsdResult::NotPsd { witness, value } => {
                all_psd = false;
                let w: Vec<String> = witness.iter().map(|c| c.to_string()).collect();
                text += &format!("block {}: {n}x{n} not PSD, v = [{}], v*Av = {value}\n", i + 1, w.join(", "));
                blocks.push(json!({"block": i + 1, "psd": false, "witness": w, "value": value.to_string()}));
            }
        }
    }
    let ok = verdict.is_yes() && all_psd;
    let discrepancy = match &verdict {
        GramVerdict::No { discrepancy } => Value::String(discrepancy.to_string()),
        GramVerdict::Yes => Value::Null,
    };
    Ok(Outcome {
        ok,
        text: text + if ok { "verified" } else { "refuted" },
        json: json!({"check": "verify-gram", "identity": verdict.is_yes(), "discrepancy": discrepancy,
                     "blocks": blocks, "verified": ok}),
    })
}

fn fock(ctx: &Ctx, src: &str, max_level: usize) -> Result<Outcome> {
    let x = parse_weyl_auto(src, ctx.opts)?;
    let mut text = String::from("M  psd\n");
    let mut levels = Vec::new();
    let mut failure = Value::Null;
    for m in 0..=max_level {
        match psd_truncated_check(&x, m)? {
            PsdResult::Psd => {
                text += &format!("{m:<2} yes\n");
                levels.push(json!({"level": m, "psd": true}));
            }
            PsdResult::NotPsd { witness, value } => {
                let y = witness_element(&witness);
                text += &format!("{m:<2} no  y = {y}, phi0(y* x y) = {value}\n");
                levels.push(json!({"level": m, "psd": false}));
                failure = json!({"level": m, "y": y.to_string(), "value": value.to_string()});
                break;
            }
        }
    }
    let ok = failure.is_null();
    Ok(Outcome {
        ok,
        text: text.trim_end().to_string(),
        json: json!({"check": "fock", "element": x.to_string(), "levels": levels, "refutation": failure, "psd": ok}),
    })
}

fn posn0(ctx: &Ctx, src: &str) -> Result<Outcome> {
    let u = ctx.npoly(src)?.to_upoly()?;
    Ok(match first_negative_natural(&u) {
        None => Outcome {
            ok: true,
            text: "yes".into(),
            json: json!({"check": "posn0", "poly": u.to_string(), "member": true}),
        },
        Some(k) => {
            let v = u.eval(&Rational::from_integer(k.into()));
            Outcome {
                ok: false,
                text: format!("no: f({k}) = {v}"),
                json: json!({"check": "posn0", "poly": u.to_string(), "member": false, "at": k, "value": v.to_string()}),
            }
        }
    })
}

fn hermite(ctx: &Ctx, minpoly: &str, q: Option<&str>) -> Result<Outcome> {
    ctx.syntax(minpoly)?;
    let field = NumberField::new(parse_upoly(minpoly, "x")?)?;
    let r = real_root_count(&field)?;
    let s = field.degree();
    let inducible = is_inducible(&field)?;
    let mut text = format!("r={r}, s={s}, inducible: {}", yes_no(inducible));
    let mut obj = json!({"check": "hermite", "minpoly": field.minpoly().to_string(), "r": r, "s": s, "inducible": inducible});
    if let Some(q) = q {
        ctx.syntax(q)?;
        let qe = NFElement::new(&field, parse_upoly(q, "x")?);
        let inertia = signature(&hermite_form(&qe)?)?;
        text += &format!("\nHermite form of Q: inertia {inertia}, signature {}", inertia.signature());
        obj["signature"] = json!(inertia.signature());
        if inducible {
            let member = in_induced_ordering(&qe)?;
            text += &format!("\nin induced ordering: {}", yes_no(member));
            obj["in_induced_ordering"] = json!(member);
        } else {
            text += "\nin induced ordering: undefined (the trace ordering is not inducible)";
            obj["in_induced_ordering"] = Value::Null;
        }
    }
    Ok(Outcome { ok: true, text, json: obj })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    vars: Vec<String>,
    matrix: Vec<Vec<String>>,
}

fn matpsd(ctx: &Ctx, file: &Path, constraints: &[String], bounds: &[String], grid: usize) -> Result<Outcome> {
    let mf: MatrixFile = serde_json::from_str(&read(file)?).map_err(|e| Error::Malformed(e.to_string()))?;
    let vars: Vec<&str> = mf.vars.iter().map(String::as_str).collect();
    let alg = PolyAlgebra::hermitian(&vars);
    let poly = |s: &str| -> Result<Poly> {
        ctx.syntax(s)?;
        let p = parse_poly(s, &vars)?;
        Poly::from_terms(&alg, p.terms().clone())
    };
    let rows = mf
        .matrix
        .iter()
        .map(|r| r.iter().map(|s| poly(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let a = MatPoly::from_rows(&alg, rows)?;
    let set = SemialgebraicSet::new(constraints.iter().map(|s| poly(s)).collect::<Result<_>>()?)?;
    if bounds.len() != vars.len() {
        return Err(Error::Malformed(format!("{} --box ranges for {} variables", bounds.len(), vars.len())));
    }
    let ranges = bounds
        .iter()
        .map(|b| {
            let (lo, hi) = b
                .split_once(':')
                .ok_or_else(|| Error::Malformed(format!("box `{b}` is not lo:hi")))?;
            Ok((qmod::expr::parse_rational(lo)?, qmod::expr::parse_rational(hi)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let points = grid_points(&ranges, grid);
    Ok(match ind_tr_refute(&a, &set, &points)? {
        None => Outcome {
            ok: true,
            text: format!("no refutation on {} grid points (not a proof of PSD)", points.len()),
            json: json!({"check": "matpsd", "points": points.len(), "refuted": false}),
        },
        Some(r) => {
            let at: Vec<String> = r.point.iter().map(|q| q.to_string()).collect();
            let w: Vec<String> = r.witness.iter().map(|c| c.to_string()).collect();
            Outcome {
                ok: false,
                text: format!(
                    "refuted at ({}): v = [{}], v*A v = {}",
                    at.join(", "),
                    w.join(", "),
                    r.value
                ),
                json: json!({"check": "matpsd", "points": points.len(), "refuted": true,
                             "point": at, "witness": w, "value": r.value.to_string()}),
            }
        }
    })
}

fn status_json(s: &AxiomStatus) -> Value {
    match s {
        AxiomStatus::Pass => json!("pass"),
        AxiomStatus::Fail { input, witness } => json!({"fail": {"input": input, "witness": witness}}),
        AxiomStatus::NotRefuted => json!("not-refuted"),
        AxiomStatus::UndecidableHere => json!("undecidable"),
    }
}

fn ce_check(desc: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let p: BimoduleProjection = descriptor::projection(desc)?;
    let report = check_axioms(&p, &AxiomSamples::random(&p, samples, seed), true)?;
    let ok = report.failures().next().is_none();
    let axioms: serde_json::Map<String, Value> = report
        .results
        .iter()
        .map(|(a, s)| (a.to_string(), status_json(s)))
        .collect();
    Ok(Outcome {
        ok,
        text: format!("{p} (seed {seed}, {samples} samples)\n{}", report.to_string().trim_end()),
        json: json!({"check": "ce-check", "projection": p.to_string(), "seed": seed, "samples": samples,
                     "axioms": axioms, "pass": ok}),
    })
}

fn act(k: i64, desc: &str) -> Result<Outcome> {
    let qm = descriptor::module(desc)?;
    let img = graded_action(k, &qm)?;
    let shown = img.as_ref().map_or("undefined".to_string(), |m| m.to_string());
    Ok(Outcome {
        ok: true,
        text: format!("{k}({qm}) = {shown}"),
        json: json!({"check": "act", "k": k, "qm": qm.to_string(), "image": img.map(|m| m.to_string())}),
    })
}

fn reproduce_paper(seed: u64) -> Outcome {
    let reports = reproduce::run_all(seed);
    let ok = reports.iter().all(|r| r.passed);
    let mut text = String::from("id   result  time      check\n");
    for r in &reports {
        text += &format!(
            "{}  {}  {:>7.3}s  {}: {}\n",
            r.id,
            if r.passed { "pass" } else { "FAIL" },
            r.elapsed.as_secs_f64(),
            r.title,
            r.detail
        );
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    text += &format!("{passed}/{} passed", reports.len());
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| json!({"id": r.id, "title": r.title, "pass": r.passed, "seconds": r.elapsed.as_secs_f64(), "detail": r.detail}))
        .collect();
    Outcome {
        ok,
        text,
        json: json!({"check": "reproduce-paper", "seed": seed, "results": rows, "pass": ok}),
    }
}

fn member(ctx: &Ctx, desc: &str, src: &str) -> Result<Outcome> {
    let qm: QuadraticModule = descriptor::module(desc)?;
    let f = ctx.npoly(src)?;
    let m = membership(&qm, &Element::Poly(f.clone()))?;
    let (ok, verdict) = match &m {
        Membership::Yes => (true, json!("yes")),
        Membership::No(why) => (false, json!({"no": why})),
        Membership::Unknown => (false, json!("unknown")),
    };
    Ok(Outcome {
        ok,
        text: m.to_string(),
        json: json!({"check": "member", "qm": qm.to_string(), "poly": f.to_string(), "verdict": verdict}),
    })
}

fn ind(ctx: &Ctx, src: &str, level: usize) -> Result<Outcome> {
    let x = parse_weyl_auto(src, ctx.opts)?;
    let out = ind_membership(
        &BimoduleProjection::grading(),
        &QuadraticModule::PosN0,
        &Element::Weyl(x.clone()),
        &IndMode::Fock(level),
    )?;
    let ok = !matches!(out.verdict, IndVerdict::No { .. });
    Ok(Outcome {
        ok,
        text: out.verdict.to_string(),
        json: json!({"check": "ind", "element": x.to_string(), "verdict": out.verdict.to_string(), "refuted": !ok}),
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let ctx = Ctx {
        opts: ParseOptions {
            forbid_decimals: cli.forbid_decimals,
        },
    };
    let seed = |s: Option<u64>| s.unwrap_or_else(sample::env_seed);
    match &cli.command {
        Command::VerifyGram { cert } => verify_gram(&ctx, cert),
        Command::Fock { element, max_level } => fock(&ctx, element, *max_level),
        Command::Posn0 { poly } => posn0(&ctx, poly),
        Command::Hermite { minpoly, q } => hermite(&ctx, minpoly, q.as_deref()),
        Command::Matpsd {
            file,
            constraints,
            bounds,
            grid,
        } => matpsd(&ctx, file, constraints, bounds, *grid),
        Command::CeCheck {
            projection,
            samples,
            seed: s,
        } => ce_check(projection, *samples, seed(*s)),
        Command::Act { k, qm } => act(*k, qm),
        Command::ReproducePaper { seed: s } => Ok(reproduce_paper(seed(*s))),
        Command::Member { qm, poly } => member(&ctx, qm, poly),
        Command::Ind { element, level } => ind(&ctx, element, *level),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
