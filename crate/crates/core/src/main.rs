use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use k3_salem::exact::rational_to_string;
use k3_salem::fibration::{
    height_by_projection, height_pairing, reduce_to_section, standard_fibrations,
};
use k3_salem::ns::{build_ns_model, verify_ns_model};
use k3_salem::pipeline::{batch, exit_status, gram_digest, FibrationSummary, PipelineOptions};
use k3_salem::salem::{compose_word, salem_verdict, Letter, Word};
use k3_salem::weierstrass::check_sections;
use k3_salem::Error;

/// Exact Néron–Severi lattices, elliptic fibrations and Salem degree 22
/// automorphisms of supersingular K3 surfaces in characteristic p ≡ 3 (mod 4).
#[derive(Parser)]
#[command(name = "k3salem", version)]
struct Cli {
    /// Also write each JSON report into this directory.
    #[arg(long, global = true, env = "K3SALEM_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PrimeArgs {
    /// A prime p ≡ 3 (mod 4).
    #[arg(long)]
    p: u64,
    /// Print JSON instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// The Néron–Severi lattice of X(p).
    Ns {
        #[command(subcommand)]
        action: NsAction,
    },
    /// Extended Dynkin configurations, fibrations and heights.
    Fibration {
        #[command(subcommand)]
        action: FibrationAction,
    },
    /// Weierstrass identities for the explicit sections.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Salem certification of a composite of translations.
    Salem {
        #[command(subcommand)]
        action: SalemAction,
    },
    /// The full computation for several primes.
    Pipeline {
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        json: bool,
        /// Worker threads (defaults to the number of CPUs).
        #[arg(long)]
        jobs: Option<usize>,
        /// Composite to certify, such as R,P,P',P''.
        #[arg(long, default_value = "R,P,P',P''")]
        word: String,
        /// Include wall-clock stage timings (reports are then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum NsAction {
    Build(PrimeArgs),
}

#[derive(Subcommand)]
enum FibrationAction {
    /// Extended ADE configurations and the three fibrations they induce.
    Find(PrimeArgs),
    /// Height pairing of two sections of the same fibration.
    Height {
        #[command(flatten)]
        prime: PrimeArgs,
        /// Two section names, such as P,R or P',P'.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        sections: Vec<String>,
    },
}

#[derive(Subcommand)]
enum VerifyAction {
    Sections(PrimeArgs),
}

#[derive(Subcommand)]
enum SalemAction {
    Run {
        #[command(flatten)]
        prime: PrimeArgs,
        #[arg(long, default_value = "R,P,P',P''")]
        word: String,
    },
}

/// Every JSON number becomes its decimal string.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, v)| (k, stringify_numbers(v)))
                .collect(),
        ),
        v => v,
    }
}

struct Output {
    out_dir: Option<PathBuf>,
}

impl Output {
    fn emit(
        &self,
        name: &str,
        json_mode: bool,
        value: Value,
        human: impl FnOnce() -> String,
    ) -> Result<(), Error> {
        let value = stringify_numbers(value);
        let text = serde_json::to_string_pretty(&value)
            .map_err(|e| Error::Consistency(format!("serializing report: {e}")))?;
        if json_mode {
            println!("{text}");
        } else {
            print!("{}", human());
        }
        if let Some(dir) = &self.out_dir {
            std::fs::create_dir_all(dir)
                .and_then(|_| std::fs::write(dir.join(format!("{name}.json")), format!("{text}\n")))
                .map_err(|e| Error::InvalidInput(format!("writing to {}: {e}", dir.display())))?;
        }
        Ok(())
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Consistency(format!("serializing report: {e}")))
}

fn ns_build(out: &Output, a: &PrimeArgs) -> Result<i32, Error> {
    let model = build_ns_model(a.p)?;
    let report = verify_ns_model(&model);
    let digest = gram_digest(model.gram());
    let value = json!({
        "model": to_value(&model)?,
        "checks": to_value(&report)?,
        "gramDigest": digest,
        "passed": report.passed(),
    });
    out.emit(&format!("ns-build-p{}", a.p), a.json, value, || {
        let mut s = format!(
            "NS(X({})): rank {}, det {}, discriminant group {:?}, signature {:?}\n",
            a.p,
            model.gram().rows(),
            report.det,
            report
                .invariant_factors
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>(),
            report.signature.unwrap_or_default(),
        );
        s += &format!("basis: {}\n", model.labels().join(" "));
        for row in model.gram().to_rows() {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
            s += &cells.join(" ");
            s += "\n";
        }
        s += &format!("gram sha256 {digest}\n");
        if !report.passed() {
            s += &format!("FAILED: {}\n", report.failures().join(", "));
        }
        s
    })?;
    Ok(if report.passed() { 0 } else { 2 })
}

fn fibration_find(out: &Output, a: &PrimeArgs) -> Result<i32, Error> {
    let model = build_ns_model(a.p)?;
    let fibs = standard_fibrations(&model)?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for c in &fibs.configs {
        *counts.entry(c.kind.to_string()).or_default() += 1;
    }
    let summaries: Vec<FibrationSummary> = [&fibs.pi, &fibs.pi_prime, &fibs.pi_double_prime]
        .into_iter()
        .map(FibrationSummary::of)
        .collect();
    let value = json!({
        "p": a.p,
        "configurationCounts": counts,
        "configurations": to_value(&fibs.configs)?,
        "fibrations": to_value(&summaries)?,
    });
    out.emit(&format!("fibration-find-p{}", a.p), a.json, value, || {
        let mut s = format!(
            "{} extended Dynkin configurations among the curves of X({}):\n",
            fibs.configs.len(),
            a.p
        );
        for (k, v) in &counts {
            s += &format!("  {k:<5} {v}\n");
        }
        for f in [&fibs.pi, &fibs.pi_prime, &fibs.pi_double_prime] {
            s += &format!("{f}\n");
        }
        s
    })?;
    Ok(0)
}

fn fibration_height(out: &Output, a: &PrimeArgs, names: &[String]) -> Result<i32, Error> {
    let [first, second] = names else {
        return Err(Error::InvalidInput(format!(
            "--sections takes exactly two names, got {}",
            names.len()
        )));
    };
    let l1: Letter = first.parse()?;
    let l2: Letter = second.parse()?;
    if l1.fibration != l2.fibration {
        return Err(Error::InvalidInput(format!(
            "{l1} and {l2} are sections of different fibrations"
        )));
    }
    let model = build_ns_model(a.p)?;
    let fibs = standard_fibrations(&model)?;
    let f = fibs.get(l1.fibration);
    let s1 = reduce_to_section(&l1.base_class(&model), f)?;
    let s2 = reduce_to_section(&l2.base_class(&model), f)?;
    let h = height_pairing(&s1, &s2, f)?;
    let h_proj = height_by_projection(&s1, &s2, f)?;
    if h != h_proj {
        return Err(Error::Consistency(format!(
            "height formula gives {h}, orthogonal projection gives {h_proj}"
        )));
    }
    let value = json!({
        "p": a.p,
        "fibration": l1.fibration.to_string(),
        "sections": [l1.to_string(), l2.to_string()],
        "classes": [to_value(&s1.class)?, to_value(&s2.class)?],
        "height": rational_to_string(&h),
    });
    out.emit(&format!("fibration-height-p{}", a.p), a.json, value, || {
        format!(
            "<{l1}, {l2}> = {} on {} of X({})\n",
            rational_to_string(&h),
            l1.fibration,
            a.p
        )
    })?;
    Ok(0)
}

fn verify_sections(out: &Output, a: &PrimeArgs) -> Result<i32, Error> {
    let checks = check_sections(a.p)?;
    let ok = checks.all_pass();
    out.emit(&format!("verify-sections-p{}", a.p), a.json, to_value(&checks)?, || {
        let yn = |b: bool| if b { "ok" } else { "FAILED" };
        format!(
            "zeta = {} in F_{}^2\nP on X: {}\nR on X: {}\nP' on Y: {}\nR' on Y: {}\npullback of P', R' is P, R: {}\n",
            checks.zeta,
            a.p,
            yn(checks.p_on_x),
            yn(checks.r_on_x),
            yn(checks.p_prime_on_y),
            yn(checks.r_prime_on_y),
            yn(checks.pullback_consistent),
        )
    })?;
    Ok(if ok { 0 } else { 2 })
}

fn salem_run(out: &Output, a: &PrimeArgs, word: &str) -> Result<i32, Error> {
    let word: Word = word.parse()?;
    let model = build_ns_model(a.p)?;
    let fibs = standard_fibrations(&model)?;
    let f_star = compose_word(&word, &model, &fibs)?;
    let v = salem_verdict(&f_star)?;
    let mut value = to_value(&v)?;
    if let Value::Object(o) = &mut value {
        o.insert("p".into(), json!(a.p));
        o.insert("word".into(), to_value(&word)?);
        o.insert("detFStar".into(), json!(f_star.det()?.to_string()));
    }
    out.emit(&format!("salem-run-p{}", a.p), a.json, value, || {
        let mut s = format!("p = {}, f = {word}\nmu(f*) = {}\n", a.p, v.mu);
        if let Some(g) = &v.trace_g {
            s += &format!("g(x)   = {g}\n");
        }
        let factors: Vec<String> = v.cyclotomic_factors.iter().map(u64::to_string).collect();
        s += &format!("cyclotomic factors: [{}]\n", factors.join(", "));
        match (&v.salem_number, &v.entropy) {
            (Some(a), Some(h)) => {
                s += &format!(
                    "Salem factor of degree {}; Salem degree 22: {}\n",
                    v.salem_degree(),
                    if v.is_salem22 { "yes" } else { "no" }
                );
                s += &format!("Salem number in {a}\nentropy in {h}\n");
            }
            _ => s += "no Salem factor: zero entropy\n",
        }
        for note in &v.notes {
            s += &format!("note: {note}\n");
        }
        s
    })?;
    Ok(if v.is_salem22 { 0 } else { 3 })
}

fn pipeline(
    out: &Output,
    primes: &[u64],
    json_mode: bool,
    jobs: Option<usize>,
    word: &str,
    timings: bool,
) -> Result<i32, Error> {
    let options = PipelineOptions {
        word: word.parse()?,
        timings,
    };
    let entries = batch(primes, jobs, &options)?;
    let value = to_value(&entries)?;
    out.emit("pipeline", json_mode, value, || {
        let mut s = String::new();
        for e in &entries {
            match &e.result {
                Ok(r) => {
                    let v = &r.verdict;
                    s += &format!(
                        "p = {:<5} det = {:<8} Salem degree 22: {:<3}",
                        r.p,
                        r.det_value,
                        if v.is_salem22 { "yes" } else { "no" }
                    );
                    if let (Some(a), Some(h)) = (&v.salem_number, &v.entropy) {
                        s += &format!("  a in {a}  h in {h}");
                    }
                    s += "\n";
                }
                Err(err) => s += &format!("p = {:<5} error: {err}\n", e.p),
            }
        }
        s
    })?;
    Ok(exit_status(
        entries
            .iter()
            .map(|e| e.result.as_ref().map(|r| r.verdict.is_salem22)),
    ))
}

fn run(cli: Cli) -> Result<i32, Error> {
    let out = Output {
        out_dir: cli.out_dir,
    };
    match cli.command {
        Command::Ns {
            action: NsAction::Build(a),
        } => ns_build(&out, &a),
        Command::Fibration { action } => match action {
            FibrationAction::Find(a) => fibration_find(&out, &a),
            FibrationAction::Height { prime, sections } => {
                fibration_height(&out, &prime, &sections)
            }
        },
        Command::Verify {
            action: VerifyAction::Sections(a),
        } => verify_sections(&out, &a),
        Command::Salem {
            action: SalemAction::Run { prime, word },
        } => salem_run(&out, &prime, &word),
        Command::Pipeline {
            primes,
            json,
            jobs,
            word,
            timings,
        } => pipeline(&out, &primes, json, jobs, &word, timings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status([Err(&e)]) as u8)
        }
    }
}
