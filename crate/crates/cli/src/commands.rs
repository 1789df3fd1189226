use std::io::Write;
use std::path::Path;

use tailrisk_core::analysis::{
    describe, exceedance, histogram, threshold_grid, NeatVariant, TailBound, TailReport, DEFAULT_BINS,
};
use tailrisk_core::scenarios::{
    four_arm_instance, fragility_cases, run_grid, two_arm_instance, GridCell, KAPPAS, REFERENCE_REPLICATIONS,
};
use tailrisk_core::sim::{collect, run_monte_carlo};
use tailrisk_core::{Environment, EpisodeResult, PolicySpec, RunConfig, DEFAULT_MASTER_SEED};

use crate::config::{self, Overrides};
use crate::error::{CliError, CliResult};
use crate::output::{num, tail_row, write_histogram, write_json, RunLabel, Sink, SummaryJson, RESULTS_HEADER, TAIL_HEADER};
use crate::{BoundArg, BoundArgs, GlobalArgs, Target, VariantArg};

fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(CliError::io(dir))
}

fn summary_of(policy: &PolicySpec, label: String, results: &[EpisodeResult]) -> CliResult<SummaryJson> {
    let rewards: Vec<f64> = results.iter().map(|r| r.cumulative_reward).collect();
    let reward = describe(&rewards)?;
    let n = results.len() as f64;
    let pseudo = results.iter().map(|r| r.pseudo_regret).sum::<f64>() / n;
    let empirical = results.iter().map(|r| r.empirical_regret).sum::<f64>() / n;
    Ok(SummaryJson::new(
        label,
        policy.design().map(|d| d.name().to_string()),
        policy.knob(),
        &reward,
        pseudo,
        empirical,
    ))
}

fn bound_reports(values: &[f64], thresholds: &[f64], bound: Option<&TailBound>) -> CliResult<Vec<String>> {
    let tails = exceedance(values, thresholds)?;
    Ok(tails
        .iter()
        .map(|t| {
            let report = bound.map(|b| TailReport::new(t, b.name(), b.evaluate(t.threshold)));
            tail_row(t, report.as_ref())
        })
        .collect())
}

pub fn simulate(global: &GlobalArgs) -> CliResult<()> {
    let path = global
        .config
        .as_deref()
        .ok_or_else(|| CliError::Usage("simulate needs --config".into()))?;
    let cfg = config::load(path)?;
    let run = cfg.run_config(Overrides {
        seed: global.seed,
        replications: global.replications,
    })?;
    create_dir(&global.out)?;

    let env = &run.environment;
    let label = RunLabel::new(&run.policy, env.arms(), env.horizon(), env.noise_scale());
    let results_path = global.out.join("results.csv");
    let mut results = Sink::create(&results_path)?;
    results.line(RESULTS_HEADER)?;
    let mut traces = match run.record_trace {
        true => {
            let mut s = Sink::create(global.out.join("traces.csv"))?;
            s.line("path_id,arms")?;
            Some(s)
        }
        false => None,
    };
    let mut kept = Vec::with_capacity(run.replications as usize);
    let mut failed: Option<CliError> = None;
    let outcome = run_monte_carlo(&run, global.workers(), |p, mut r| {
        let written = results.line(&label.row(p, &r)).and_then(|_| match (&mut traces, &r.arm_sequence) {
            (Some(s), Some(seq)) => {
                let arms: Vec<String> = seq.iter().map(u32::to_string).collect();
                s.line(&format!("{p},{}", arms.join(";")))
            }
            _ => Ok(()),
        });
        if let Err(e) = written {
            failed = Some(e);
            return Err(std::io::Error::other("results sink failed").into());
        }
        r.arm_sequence = None;
        kept.push(r);
        Ok(())
    });
    if let Some(e) = failed {
        return Err(e);
    }
    outcome?;
    results.finish()?;
    if let Some(s) = traces {
        s.finish()?;
    }

    let summary = summary_of(&run.policy, run.policy.kind().to_string(), &kept)?;
    write_json(&global.out.join("summary.json"), &summary)?;

    if let Some(thresholds) = &cfg.thresholds {
        let values: Vec<f64> = kept.iter().map(|r| cfg.tail_functional.of(r)).collect();
        let mut tail = Sink::create(global.out.join("tail.csv"))?;
        tail.line(TAIL_HEADER)?;
        for row in bound_reports(&values, thresholds, cfg.bound.as_ref())? {
            tail.line(&row)?;
        }
        tail.finish()?;
    }
    Ok(())
}

fn cell_file(cell: &GridCell) -> String {
    format!("{}_kappa{}.csv", cell.policy.label(), cell.kappa)
}

pub fn reproduce(global: &GlobalArgs, target: Target) -> CliResult<()> {
    let (name, instance) = match target {
        Target::Table1 => ("table1", two_arm_instance()),
        Target::Table2 => ("table2", four_arm_instance()),
        Target::Fig1 => ("fig1", two_arm_instance()),
        Target::Fig2 => ("fig2", four_arm_instance()),
    };
    let replications = global.replications.unwrap_or(REFERENCE_REPLICATIONS);
    let seed = global.seed.unwrap_or(DEFAULT_MASTER_SEED);
    let cells = run_grid(&instance, replications, seed, global.workers())?;
    create_dir(&global.out)?;

    match target {
        Target::Table1 | Target::Table2 => {
            let mut table = Sink::create(global.out.join(format!("{name}.csv")))?;
            let kappas: Vec<String> = KAPPAS.iter().map(f64::to_string).collect();
            table.line(&format!("policy,{}", kappas.join(",")))?;
            for row in cells.chunks(KAPPAS.len()) {
                let means: Vec<String> = row
                    .iter()
                    .map(|c| {
                        let r = c.rewards();
                        format!("{:.2}", r.iter().sum::<f64>() / r.len() as f64)
                    })
                    .collect();
                table.line(&format!("{},{}", row[0].policy.label(), means.join(",")))?;
            }
            table.finish()?;

            let mut detail = Sink::create(global.out.join(format!("{name}_cells.csv")))?;
            detail.line("policy,kappa,replications,mean_reward,std,std_error,mean_pseudo_regret,mean_empirical_regret")?;
            let mut summaries = Vec::with_capacity(cells.len());
            for c in &cells {
                let s = summary_of(&c.policy.spec(c.kappa, instance.arms()), c.policy.label().into(), &c.results)?;
                detail.line(&format!(
                    "{},{},{},{},{},{},{},{}",
                    c.policy.label(),
                    c.kappa,
                    s.replications,
                    num(s.mean_reward),
                    num(s.std),
                    num(s.std / (s.replications as f64).sqrt()),
                    num(s.mean_pseudo_regret),
                    num(s.mean_empirical_regret)
                ))?;
                summaries.push(SummaryJson { kappa: c.kappa, ..s });
            }
            detail.finish()?;
            write_json(&global.out.join(format!("{name}_summary.json")), &summaries)?;
        }
        Target::Fig1 | Target::Fig2 => {
            let dir = global.out.join(name);
            create_dir(&dir)?;
            let mut index = Sink::create(dir.join("index.csv"))?;
            index.line("policy,kappa,file,lo,hi,bins")?;
            for c in &cells {
                let hist = histogram(&c.rewards(), DEFAULT_BINS)?;
                let file = cell_file(c);
                write_histogram(&dir.join(&file), &hist)?;
                index.line(&format!(
                    "{},{},{file},{},{},{}",
                    c.policy.label(),
                    c.kappa,
                    num(hist.lo),
                    num(hist.hi),
                    hist.bins()
                ))?;
            }
            index.finish()?;
        }
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str, bound: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{bound} needs --{flag}")))
}

pub fn tail_bound(args: &BoundArgs) -> CliResult<TailBound> {
    let horizon = args.horizon;
    let sigma = args.sigma;
    let bound = match args.name {
        BoundArg::ThmK => TailBound::ThmK {
            arms: need(args.arms, "arms", "ThmK")?,
            horizon,
            sigma,
            eta: need(args.eta, "eta", "ThmK")?,
        },
        BoundArg::ThmKOpt => {
            let (eta1, eta2) = match (args.eta1, args.eta2, args.eta) {
                (Some(a), b, _) => (a, b.unwrap_or(0.0)),
                (None, None, Some(e)) => (e, e),
                _ => return Err(CliError::Usage("ThmKOpt needs --eta1 (and optionally --eta2) or --eta".into())),
            };
            TailBound::ThmKOpt {
                arms: need(args.arms, "arms", "ThmKOpt")?,
                horizon,
                sigma,
                eta1,
                eta2,
            }
        }
        BoundArg::ThmAnyTime => TailBound::ThmAnyTime {
            arms: need(args.arms, "arms", "ThmAnyTime")?,
            horizon,
            sigma,
            eta: need(args.eta, "eta", "ThmAnyTime")?,
        },
        BoundArg::ThmLinear => TailBound::ThmLinear {
            dim: need(args.dim, "dim", "ThmLinear")?,
            horizon,
            sigma,
            eta: need(args.eta, "eta", "ThmLinear")?,
        },
        BoundArg::NeatForm => TailBound::NeatForm {
            variant: match args.variant {
                VariantArg::ThmK => NeatVariant::ThmK,
                VariantArg::ThmKOpt => NeatVariant::ThmKOpt,
            },
            arms: need(args.arms, "arms", "NeatForm")?,
            horizon,
            sigma,
            eta: need(args.eta, "eta", "NeatForm")?,
        },
    };
    bound.validate()?;
    Ok(bound)
}

pub fn bounds(global: &GlobalArgs, args: &BoundArgs) -> CliResult<()> {
    let bound = tail_bound(args)?;
    let grid = if args.x.is_empty() {
        if args.points == 0 {
            return Err(CliError::Usage("--points must be positive".into()));
        }
        threshold_grid(args.x_min, args.x_max.unwrap_or(args.horizon as f64), args.points)
    } else {
        args.x.clone()
    };
    let mut rows = vec!["x,raw,clamped,y".to_string()];
    for x in grid {
        let v = bound.evaluate(x);
        rows.push(format!("{},{},{},{}", num(x), num(v.raw), num(v.clamped()), v.y.map_or(String::new(), num)));
    }
    if args.stdout {
        let mut out = std::io::stdout().lock();
        for r in rows {
            writeln!(out, "{r}").map_err(CliError::io("<stdout>"))?;
        }
        return Ok(());
    }
    let mut sink = Sink::create(global.out.join("bounds.csv"))?;
    for r in rows {
        sink.line(&r)?;
    }
    sink.finish()
}

pub fn fragility(global: &GlobalArgs) -> CliResult<()> {
    let replications = global.replications.unwrap_or(REFERENCE_REPLICATIONS);
    let seed = global.seed.unwrap_or(DEFAULT_MASTER_SEED);
    create_dir(&global.out)?;
    let mut tail = Sink::create(global.out.join("tail.csv"))?;
    tail.line(&format!("scenario,policy,design,kappa_or_eta,sigma0,{TAIL_HEADER}"))?;
    let mut summaries = Vec::new();
    for case in fragility_cases() {
        let run = RunConfig {
            environment: case.environment.clone(),
            policy: case.policy.clone(),
            replications,
            master_seed: seed,
            record_trace: false,
        };
        let results = collect(&run, global.workers())?;
        let horizon = run.environment.horizon() as f64;
        let thresholds = threshold_grid(0.0, horizon, 21);
        let pseudo: Vec<f64> = results.iter().map(|r| r.pseudo_regret).collect();
        let prefix = format!(
            "{},{},{},{},{}",
            case.scenario,
            case.label,
            case.policy.design().map_or("", |d| d.name()),
            num(case.policy.knob()),
            num(run.environment.noise_scale())
        );
        for row in bound_reports(&pseudo, &thresholds, case.bound.as_ref())? {
            tail.line(&format!("{prefix},{row}"))?;
        }
        let label = match &run.environment {
            Environment::Mab(i) => format!("{}:{}:sigma0={}", case.scenario, case.label, i.noise_scale()),
            Environment::Linear(_) => case.label.clone(),
        };
        summaries.push(summary_of(&case.policy, label, &results)?);
    }
    tail.finish()?;
    write_json(&global.out.join("summary.json"), &summaries)
}
