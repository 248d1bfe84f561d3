//! `qstat`: exact and sampled probabilities for identical particles.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qstat_core::asymptotics::{self, BetaPosterior};
use qstat_core::montecarlo::{self, Scenario};
use qstat_core::rational::{self, Rational};
use qstat_core::{scenarios, DrawRecord, Ensemble, QstatError, StatisticsKind};
use serde_json::json;

use report::{distribution_json, distribution_text, ExportFormat, Report, Row};

const DEFAULT_SEED: u64 = 2026;

#[derive(Parser)]
#[command(name = "qstat", version, about = "Exact quantum statistics for coins, cribs, day care and dice")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the distribution table (R, exact_p, beta_density) to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Format of the exported table.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: ExportFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability that all coins land alike, plus the fraction distribution.
    Coins {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, value_enum)]
        stats: Stats,
    },
    /// Answers to the two-children crib questions.
    Crib {
        #[arg(long, value_enum)]
        stats: Stats,
    },
    /// Bosonic day care: prior, posterior after a boy is drawn, and means.
    Daycare {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Bosonic dice posterior after a draw record, with its Beta limit.
    Dice {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Draw counts per level, `N1,N2,...,Nk`.
        #[arg(long)]
        record: DrawRecord,
    },
    /// Compare exact answers with Monte Carlo estimates.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// coins, crib, daycare, dice or all.
    #[arg(long, default_value = "all", value_parser = parse_scenarios)]
    scenario: ScenarioList,
    /// Minimum accepted trials behind every estimate.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Overridden by QSTAT_SEED when set.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone)]
struct ScenarioList(Vec<Scenario>);

fn parse_scenarios(text: &str) -> Result<ScenarioList, String> {
    Scenario::parse_list(text).map(ScenarioList)
}

#[derive(Clone, Copy, ValueEnum)]
enum Stats {
    Classical,
    Be,
    Fd,
}

impl From<Stats> for StatisticsKind {
    fn from(s: Stats) -> Self {
        match s {
            Stats::Classical => StatisticsKind::Classical,
            Stats::Be => StatisticsKind::BoseEinstein,
            Stats::Fd => StatisticsKind::FermiDirac,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(QstatError),
    Io(std::io::Error),
}

impl From<QstatError> for Failure {
    fn from(e: QstatError) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let (report, ok) = match &cli.command {
        Command::Coins { k, n, stats } => (coins(*k as usize, *n, (*stats).into())?, true),
        Command::Crib { stats } => (crib((*stats).into()), true),
        Command::Daycare { n } => (daycare(*n)?, true),
        Command::Dice { k, n, record } => (dice(*k as usize, *n, record)?, true),
        Command::Verify(args) => {
            if cli.out.is_some() {
                return Err(Failure::Usage("verify has no distribution table to export".into()));
            }
            verify(args)?
        }
    };
    if let Some(path) = &cli.out {
        let rows = report.table.as_deref().unwrap_or(&[]);
        report::export_table(report.command, rows, path, cli.format).map_err(Failure::Io)?;
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.into_json()).expect("json"));
    } else {
        print!("{}", report.text);
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn table(rows: &[(Rational, Rational)], beta: Option<BetaPosterior>) -> Vec<Row> {
    rows.iter()
        .map(|(r, p)| Row {
            r: r.clone(),
            exact_p: p.clone(),
            beta_density: beta.map(|b| b.density(rational::to_f64(r))),
        })
        .collect()
}

fn coins(k: usize, n: u32, stats: StatisticsKind) -> Result<Report, Failure> {
    let mut report = Report::new("coins");
    let all_same = scenarios::all_same_state_probability(k, n, stats)?;
    report.set("k", json!(k));
    report.set("n", json!(n));
    report.set("stats", json!(stats.as_str()));
    report.set_rational("all_same", &all_same);
    report.line(format!("{n} {stats} particle(s) in {k} level(s)"));
    report.line(format!(
        "P(all in level 1) = {} ({:.6})",
        rational::format(&all_same),
        rational::to_f64(&all_same)
    ));
    if n > 0 {
        let prior = Ensemble::equal_weight(k, n, stats)?;
        let dist = prior.fraction_distribution(0)?;
        report.set("distribution", distribution_json(&dist));
        report.line("fraction R in level 1:");
        report.text.push_str(&distribution_text(&dist));
        let beta = (stats == StatisticsKind::BoseEinstein && k >= 2)
            .then(|| BetaPosterior::from_record(&DrawRecord::empty(k)).ok())
            .flatten();
        report.table = Some(table(&dist, beta));
    }
    Ok(report)
}

fn crib(stats: StatisticsKind) -> Report {
    let mut report = Report::new("crib");
    let answers = scenarios::crib_answers(stats);
    report.set("stats", json!(stats.as_str()));
    report.set_rational("question_I", &answers.question_i);
    report.set_rational("question_II", &answers.question_ii);
    report.line(format!("crib with two {stats} children"));
    report.line(format!(
        "I  (a random child is a boy; the other is a boy):  {}",
        rational::format(&answers.question_i)
    ));
    report.line(format!(
        "II (at least one boy; both are boys):             {}",
        rational::format(&answers.question_ii)
    ));
    let prior = Ensemble::equal_weight(2, 2, stats).expect("two particles fit in two levels");
    if let Ok((remaining, _)) = prior.condition_on_draw(0) {
        if let Ok(dist) = remaining.fraction_distribution(0) {
            let beta = (stats == StatisticsKind::BoseEinstein).then_some(BetaPosterior { nu1: 2, nu_rest: 1 });
            report.table = Some(table(&dist, beta));
        }
    }
    report
}

fn daycare(n: u32) -> Result<Report, Failure> {
    let mut report = Report::new("daycare");
    report.set("n", json!(n));
    let prior = Ensemble::equal_weight(2, n, StatisticsKind::BoseEinstein)?;
    let prior_dist = prior.fraction_distribution(0)?;
    let prior_mean = prior.expectation_fraction(0)?;
    let posterior = scenarios::daycare_posterior_closed_form(n)?;
    let mean_boys = scenarios::daycare_mean_boys(n);

    report.set("prior", distribution_json(&prior_dist));
    report.set_rational("prior_mean_fraction", &prior_mean);
    report.set(
        "posterior",
        json!(posterior
            .iter()
            .enumerate()
            .map(|(m, p)| json!({ "m": m, "p": rational::format(p), "p_f64": rational::to_f64(p) }))
            .collect::<Vec<_>>()),
    );
    report.set_rational("mean_boys_left", &mean_boys);

    report.line(format!("bosonic day care with {n} {}", if n == 1 { "child" } else { "children" }));
    report.line(format!("prior: each R = m/{n} has probability 1/{}", n + 1));
    report.line(format!("prior mean fraction = {}", rational::format(&prior_mean)));
    report.line("after a boy is drawn, P(m boys left):");
    for (m, p) in posterior.iter().enumerate() {
        report.line(format!("  m = {m:>4}  P = {:>14}  ({:.6})", rational::format(p), rational::to_f64(p)));
    }
    report.line(format!("mean boys left = {}", rational::format(&mean_boys)));
    if n >= 2 {
        let left = Rational::from_integer((n - 1).into());
        let mean_fraction = &mean_boys / &left;
        report.set_rational("posterior_mean_fraction", &mean_fraction);
        report.line(format!("mean fraction of boys left = {}", rational::format(&mean_fraction)));
        let rows: Vec<_> = posterior
            .iter()
            .enumerate()
            .map(|(m, p)| (rational::ratio(m as u64, (n - 1) as u64), p.clone()))
            .collect();
        report.table = Some(table(&rows, Some(BetaPosterior { nu1: 2, nu_rest: 1 })));
    }
    Ok(report)
}

fn dice(k: usize, n: u32, record: &DrawRecord) -> Result<Report, Failure> {
    if record.levels() != k {
        return Err(Failure::Usage(format!(
            "--record has {} entries but --k is {k}",
            record.levels()
        )));
    }
    let mut report = Report::new("dice");
    let posterior = scenarios::dice_posterior(k, n, record)?;
    let beta = BetaPosterior::from_record(record)?;
    let deviation = asymptotics::finite_n_deviation(k, n, record)?;
    report.set("k", json!(k));
    report.set("n", json!(n));
    report.set("record", json!(record.counts()));
    report.set("remaining", json!(n - record.total()));
    report.set("distribution", distribution_json(&posterior.distribution));
    report.set_rational("mean", &posterior.mean);
    report.set("beta", json!({ "nu1": beta.nu1, "nu_rest": beta.nu_rest }));
    report.set_rational("beta_mean", &beta.mean());
    report.set("finite_n_deviation", json!(deviation));

    report.line(format!("{n} bosonic dice with {k} faces, draws {record}"));
    report.line(format!("posterior of R over the {} remaining:", n - record.total()));
    report.text.push_str(&distribution_text(&posterior.distribution));
    report.line(format!(
        "mean R = {} ({:.6})",
        rational::format(&posterior.mean),
        rational::to_f64(&posterior.mean)
    ));
    report.line(format!(
        "Beta limit: nu1 = {}, nu_rest = {}, mean = {}",
        beta.nu1,
        beta.nu_rest,
        rational::format(&beta.mean())
    ));
    report.line(format!("finite-n deviation = {deviation:.6e}"));
    report.table = Some(table(&posterior.distribution, Some(beta)));
    Ok(report)
}

fn verify(args: &VerifyArgs) -> Result<(Report, bool), Failure> {
    let seed = match std::env::var("QSTAT_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("QSTAT_SEED '{text}' is not an unsigned integer")))?,
        Err(_) => args.seed,
    };
    let result = montecarlo::verify(&args.scenario.0, args.trials, seed)?;
    let ok = result.all_pass();
    let mut report = Report::new("verify");
    report.set("seed", json!(seed));
    report.set("min_accepted", json!(args.trials));
    report.set("pass", json!(ok));
    report.set("checks", serde_json::to_value(&result.checks).expect("json"));
    report.line(format!("seed {seed}, at least {} accepted trials per estimate", args.trials));
    for c in &result.checks {
        report.line(format!(
            "[{}] {:<8} {:<55} exact {:>8} ({:.5})  est {:.5}  [{:.5}, {:.5}]",
            if c.pass { "PASS" } else { "FAIL" },
            c.scenario.as_str(),
            c.label,
            rational::format(&c.exact),
            rational::to_f64(&c.exact),
            c.estimate,
            c.ci_low,
            c.ci_high,
        ));
    }
    let failed = result.failures().count();
    report.line(format!("{} checks, {failed} failed", result.checks.len()));
    Ok((report, ok))
}
