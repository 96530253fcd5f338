//! The `bs-twist` command line. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code: 0 on success, 1 for a domain
//! error (printed with its code), 2 for usage and syntax errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::britton::{are_equal, normal_form};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::homs::{
    endo_validate_with_window, kappa, kernel_decompose, koch_form_search, EndoSpec, DEFAULT_WINDOW,
};
use crate::models::ModelFamily;
use crate::reidemeister::{
    certify_catalog, coincidence_certify, coker_order, enumerate_classes_ball, power_constraint, snf, BoxBounds,
    IntMatrix, ReidemeisterOutcome,
};
use crate::selftest;
use crate::word::{parse_word, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "bs-twist", version, about = "Word problem, endomorphisms and twisted conjugacy in B(m,n)")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Print the configuration line and extra detail.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GroupArg {
    /// The group B(m,n), written m,n.
    #[arg(long, allow_hyphen_values = true)]
    group: GroupSpec,
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[command(flatten)]
    group: GroupArg,

    /// Endomorphism spec file (`group m n`, `a -> word`, `b -> word`).
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical normal form of a word.
    Normalize {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// Decide whether two words are equal.
    Equal {
        #[command(flatten)]
        group: GroupArg,
        u: String,
        v: String,
    },
    /// Product of words, freely reduced and normalized.
    Mult {
        #[command(flatten)]
        group: GroupArg,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Embed a word in the faithful model of its group and check the round trip.
    ModelCheck {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// Check that a spec defines an endomorphism.
    HomValidate {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Maps induced on Z, on the abelianization and on the kernel.
    HomInduced {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: u32,
        /// Search radius for phi(b) = g b^r g^-1.
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Write a word of ker |.|_a in the generators g_i = a^-i b a^i.
    KernelDecompose {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// The rational invariant kappa of a word in ker |.|_a.
    Kappa {
        #[command(flatten)]
        group: GroupArg,
        word: String,
    },
    /// Certificate that R(phi) is infinite.
    Certify {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Certificate that the coincidence number R(phi, psi) is infinite.
    Coincidence {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        psi: PathBuf,
    },
    /// Union-find enumeration of twisted classes in a model box.
    Enumerate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Second endomorphism (default: identity).
        #[arg(long)]
        psi: Option<PathBuf>,
        /// Box bounds such as u=64,v=8 (Klein), k=4,t=64,e=2 (affine), l=4,k=4 (free-by-cyclic).
        #[arg(long)]
        bounds: Option<BoxBounds>,
        #[arg(long, default_value_t = 2)]
        margin: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smith normal form and cokernel order of an integer matrix like [[2,4],[6,8]].
    Snf { matrix: IntMatrix },
    /// {k in range : n^(k-1) = m^(k-1)}.
    PowerConstraint {
        #[command(flatten)]
        group: GroupArg,
        /// Inclusive range lo,hi.
        #[arg(long, allow_hyphen_values = true, default_value = "-10,10")]
        range: String,
    },
    /// Isomorphic copy with 0 < m <= |n| and the images of the generators.
    Standardize {
        #[command(flatten)]
        group: GroupArg,
        /// Words to carry across the isomorphism.
        words: Vec<String>,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    if cli.verbose {
        let _ = writeln!(err, "# config: {}", config_line(&cli, &args));
    }
    match dispatch(&cli) {
        Ok(Output { text, json, code }) => {
            let _ = match cli.format {
                Format::Text => write!(out, "{text}"),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("json renders")),
            };
            code
        }
        Err(e) => {
            match cli.format {
                Format::Text => {
                    let _ = writeln!(err, "error[{}]: {e}", e.code());
                }
                Format::Json => {
                    let _ = writeln!(out, "{}", json!({ "error": e.code(), "message": e.to_string() }));
                }
            }
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn config_line(cli: &Cli, args: &[OsString]) -> String {
    let (name, group) = match &cli.command {
        Command::Normalize { group, .. } => ("normalize", Some(group.group)),
        Command::Equal { group, .. } => ("equal", Some(group.group)),
        Command::Mult { group, .. } => ("mult", Some(group.group)),
        Command::ModelCheck { group, .. } => ("model-check", Some(group.group)),
        Command::HomValidate { spec } => ("hom-validate", Some(spec.group.group)),
        Command::HomInduced { spec, .. } => ("hom-induced", Some(spec.group.group)),
        Command::KernelDecompose { group, .. } => ("kernel-decompose", Some(group.group)),
        Command::Kappa { group, .. } => ("kappa", Some(group.group)),
        Command::Certify { spec } => ("certify", Some(spec.group.group)),
        Command::Coincidence { spec, .. } => ("coincidence", Some(spec.group.group)),
        Command::Enumerate { spec, .. } => ("enumerate", Some(spec.group.group)),
        Command::Snf { .. } => ("snf", None),
        Command::PowerConstraint { group, .. } => ("power-constraint", Some(group.group)),
        Command::Standardize { group, .. } => ("standardize", Some(group.group)),
        Command::Selftest { .. } => ("selftest", None),
    };
    let format = match cli.format {
        Format::Text => "text",
        Format::Json => "json",
    };
    let mut line = format!("command={name}");
    if let Some(g) = group {
        line.push_str(&format!(" group={g}"));
    }
    line.push_str(&format!(" format={format}"));
    match &cli.command {
        Command::Enumerate { bounds, margin, jobs, seed, .. } => {
            let bounds = bounds.as_ref().map_or("default".to_string(), ToString::to_string);
            line.push_str(&format!(" bounds={bounds} margin={margin} jobs={jobs} seed={seed}"));
        }
        Command::HomInduced { window, radius, .. } => line.push_str(&format!(" window={window} radius={radius}")),
        Command::Selftest { seed, .. } => line.push_str(&format!(" seed={seed}")),
        _ => {}
    }
    let argv: Vec<String> = args.iter().skip(1).map(|a| format!("{:?}", a.to_string_lossy())).collect();
    format!("{line} argv=[{}]", argv.join(" "))
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Output { text, json, code: 0 }
    }
}

fn read_spec(path: &Path, group: &GroupSpec) -> Result<EndoSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let spec = EndoSpec::parse(&text)?;
    if spec.group() != group {
        return Err(Error::GroupMismatch(group.to_string(), spec.group().to_string()));
    }
    Ok(spec)
}

fn outcome_text(outcome: &ReidemeisterOutcome) -> String {
    outcome.to_string()
}

fn dispatch(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Normalize { group, word } => {
            let nf = normal_form(&parse_word(word)?, &group.group);
            Output::new(nf.to_string(), json!({ "group": group.group.to_string(), "normal_form": nf.to_string() }))
        }
        Command::Equal { group, u, v } => {
            let equal = are_equal(&parse_word(u)?, &parse_word(v)?, &group.group);
            let text = if equal { "equal" } else { "not equal" };
            Output::new(text, json!({ "group": group.group.to_string(), "equal": equal }))
        }
        Command::Mult { group, words } => {
            let mut product = Word::identity();
            for w in words {
                product = product.multiply(&parse_word(w)?);
            }
            let nf = normal_form(&product, &group.group);
            let text = if cli.verbose { format!("{product}\nnormal form: {nf}") } else { product.to_string() };
            Output::new(text, json!({ "product": product.to_string(), "normal_form": nf.to_string() }))
        }
        Command::ModelCheck { group, word } => model_check(&group.group, word)?,
        Command::HomValidate { spec } => {
            let s = read_spec(&spec.spec, &spec.group.group)?;
            let data = endo_validate_with_window(&s, DEFAULT_WINDOW)?;
            let mut text = format!("valid endomorphism of {}: a -> {}, b -> {}", data.group, s.image_a(), s.image_b());
            for d in &data.diagnostics {
                text.push_str(&format!("\n{}: {}", d.code, d.message));
            }
            Output::new(text, json!({ "valid": true, "induced": data.to_json() }))
        }
        Command::HomInduced { spec, window, radius } => {
            let s = read_spec(&spec.spec, &spec.group.group)?;
            let data = endo_validate_with_window(&s, *window)?;
            let koch = koch_form_search(&s, *radius);
            let mut text = data.to_string();
            match &koch {
                Some((g, r)) => text.push_str(&format!("phi(b) = g b^r g^-1 with g = {g}, r = {r}\n")),
                None => text.push_str(&format!("no g b^r g^-1 form found within radius {radius}\n")),
            }
            let mut json = data.to_json();
            json["koch_form"] = match koch {
                Some((g, r)) => json!({ "conjugator": g.to_string(), "exponent": r.to_string(), "radius": radius }),
                None => Value::Null,
            };
            Output::new(text, json)
        }
        Command::KernelDecompose { group, word } => {
            let w = parse_word(word)?;
            let d = kernel_decompose(&w, &group.group)?;
            Output::new(d.to_string(), json!({ "terms": d.to_json() }))
        }
        Command::Kappa { group, word } => {
            let value = kappa(&parse_word(word)?, &group.group)?;
            Output::new(value.to_string(), json!({ "kappa": value.to_string() }))
        }
        Command::Certify { spec } => {
            let s = read_spec(&spec.spec, &spec.group.group)?;
            let identity = EndoSpec::identity(*s.group());
            certify_output(&s, &identity, cli.verbose)?
        }
        Command::Coincidence { spec, psi } => {
            let phi = read_spec(&spec.spec, &spec.group.group)?;
            let psi = read_spec(psi, &spec.group.group)?;
            certify_output(&phi, &psi, cli.verbose)?
        }
        Command::Enumerate { spec, psi, bounds, margin, jobs, seed } => {
            let group = spec.group.group;
            let phi = read_spec(&spec.spec, &group)?;
            let psi = match psi {
                Some(p) => read_spec(p, &group)?,
                None => EndoSpec::identity(group),
            };
            let report = enumerate_classes_ball(&group, &phi, &psi, bounds.as_ref(), *margin, *jobs)?;
            let mut json = report.to_json();
            json["seed"] = json!(seed);
            Output::new(report.to_string(), json)
        }
        Command::Snf { matrix } => {
            let s = snf(matrix);
            let order = coker_order(matrix);
            let diag: Vec<String> = s.diagonal.iter().map(ToString::to_string).collect();
            let text = format!("D = diag({})\nU = {}\nV = {}\ncoker order: {order}", diag.join(","), s.u, s.v);
            Output::new(
                text,
                json!({
                    "diagonal": diag,
                    "u": s.u.to_string(),
                    "v": s.v.to_string(),
                    "coker_order": order.to_string(),
                }),
            )
        }
        Command::PowerConstraint { group, range } => {
            let (lo, hi) = parse_range(range)?;
            let set = power_constraint(group.group.m(), group.group.n(), lo, hi);
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            Output::new(format!("{{{}}}", items.join(", ")), json!({ "range": [lo, hi], "k": set }))
        }
        Command::Standardize { group, words } => {
            let st = group.group.standardize();
            let mut text = format!("{} -> {}: a -> {}, b -> {}", st.source, st.target, st.image_a(), st.image_b());
            if st.abelian {
                text.push_str("\nnote: the group is abelian (Z + Z)");
            }
            let mut mapped = Vec::new();
            for w in words {
                let image = st.apply(&parse_word(w)?);
                text.push_str(&format!("\n{w} -> {image}"));
                mapped.push(image.to_string());
            }
            Output::new(
                text,
                json!({
                    "source": st.source.to_string(),
                    "target": st.target.to_string(),
                    "image_a": st.image_a().to_string(),
                    "image_b": st.image_b().to_string(),
                    "abelian": st.abelian,
                    "words": mapped,
                }),
            )
        }
        Command::Selftest { seed, criterion } => {
            let results = match criterion {
                Some(id) => vec![selftest::run_criterion(*id, *seed).ok_or_else(|| Error::Syntax {
                    position: 0,
                    token: format!("criterion {id}"),
                })?],
                None => selftest::run_all(*seed),
            };
            let passed = results.iter().filter(|r| r.passed).count();
            let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
            text.push_str(&format!("{passed} of {} criteria passed (seed {seed})", results.len()));
            let json = json!({
                "seed": seed,
                "criteria": results.iter().map(|r| json!({
                    "id": r.id,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "seconds": r.elapsed.as_secs_f64(),
                    "limit_seconds": r.limit.as_secs(),
                })).collect::<Vec<_>>(),
            });
            let mut output = Output::new(text, json);
            if passed != results.len() {
                output.code = 1;
            }
            output
        }
    })
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Syntax { position: 0, token: text.to_string() };
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn model_check(group: &GroupSpec, word: &str) -> Result<Output> {
    let w = parse_word(word)?;
    let family = ModelFamily::for_group(group)?;
    let element = family.embed(&w)?;
    let reparsed = family.parse_element(&element.to_string())?;
    let back = family.to_word(&element)?;
    let round_trip = reparsed == element && are_equal(&back, &w, group) && family.embed(&back)? == element;
    let text = format!(
        "{} model ({}): {w} -> {element}\nround trip: {}",
        family.family(),
        group,
        if round_trip { "ok" } else { "FAILED" }
    );
    let mut output = Output::new(
        text,
        json!({
            "family": family.family(),
            "element": element.to_string(),
            "word": back.to_string(),
            "round_trip": round_trip,
        }),
    );
    if !round_trip {
        output.code = 1;
    }
    Ok(output)
}

fn certify_output(phi: &EndoSpec, psi: &EndoSpec, verbose: bool) -> Result<Output> {
    let outcome = if verbose {
        let results = certify_catalog(phi, psi, true)?;
        let mut text = String::new();
        for r in &results {
            text.push_str(&format!(
                "{} {}: {}\n",
                if r.attempt.succeeded { "+" } else { "-" },
                r.attempt.invariant,
                r.attempt.reason
            ));
        }
        let outcome = match results.iter().find_map(|r| r.certificate.clone()) {
            Some(c) => ReidemeisterOutcome::Infinite(Box::new(c)),
            None => ReidemeisterOutcome::Unknown(results.iter().map(|r| r.attempt.clone()).collect()),
        };
        let mut json = outcome.to_json();
        json["attempts"] = json!(results.iter().map(|r| &r.attempt).collect::<Vec<_>>());
        text.push_str(&outcome_text(&outcome));
        return Ok(Output::new(text, json));
    } else {
        coincidence_certify(phi, psi)?
    };
    Ok(Output::new(outcome_text(&outcome), outcome.to_json()))
}
