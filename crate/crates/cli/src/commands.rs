//! Command implementations. Every command produces a [`Report`] plus an
//! exit code; rendering happens in `main`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use counterpoint_core::dichotomy::{enumerate_strong, polarity_scan, StrongDichotomy};
use counterpoint_core::fux::{run_comparison, FuxCase, FuxError, FuxOptions, UniverseMode};
use counterpoint_core::oracle::Oracle;
use counterpoint_core::projection::{EngineError, ProjectionResult, ProjectionTable};
use counterpoint_core::ring::TwoInterval;

use crate::args::{Cli, Command};
use crate::cache::{cache_read, cache_write, CacheOutcome};
use crate::compose::load_composition;
use crate::report::{
    paper_diff, AffineRecord, CellRecord, CheckRecord, CompareRecord, DichotomiesRecord,
    DichotomyRecord, IntervalRecord, OracleRecord, PolarityRecord, ProjectionRecord,
    ProjectionsRecord, Report, ResultRecord, StepRecord, SuccessorsRecord,
};
use crate::{CliError, RunConfig};

pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

/// Parses the configuration and dispatches, pinning the thread pool when
/// `--threads` is given.
pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let config = RunConfig::from_parts(cli.modulus, cli.consonances.clone())?;
    if cli.threads.is_some() && !cfg!(feature = "parallel") {
        eprintln!("warning: built without the `parallel` feature; --threads ignored");
    }
    let cache = cli.cache.clone();
    let command = cli.command;
    counterpoint_core::with_threads(cli.threads, move || {
        run_command(&config, command, cache.as_deref())
    })
}

fn run_command(
    config: &RunConfig,
    command: Command,
    cache: Option<&Path>,
) -> Result<Outcome, CliError> {
    match command {
        Command::Polarity => cmd_polarity(config),
        Command::Dichotomies { count_only } => cmd_dichotomies(config, count_only),
        Command::Projections { y, z, all, oracle } => {
            cmd_projections(config, y, z, all, oracle, cache)
        }
        Command::Successors {
            interval,
            matrix,
            oracle,
        } => cmd_successors(config, &interval, matrix, oracle, cache),
        Command::Check { path, matrix } => cmd_check(config, &path, matrix, cache),
        Command::Compare {
            case,
            universe,
            case1_no_fs_step,
        } => cmd_compare(config, case, &universe, case1_no_fs_step, cache),
    }
}

fn engine_error(e: EngineError) -> CliError {
    match e {
        EngineError::DissonantDownbeat(_)
        | EngineError::NotConsonant(_)
        | EngineError::BoundViolation { .. } => CliError::Domain(e.to_string()),
        EngineError::Ring(_) => CliError::Input(e.to_string()),
    }
}

fn fux_error(e: FuxError) -> CliError {
    match e {
        FuxError::Engine(inner) => engine_error(inner),
        other => CliError::Input(other.to_string()),
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Loads a valid cache into the table, or computes the full sweep and
/// (re)writes the cache. No-op without a cache path.
fn prime_cache(
    table: &ProjectionTable,
    d: &StrongDichotomy,
    cache: Option<&Path>,
) -> Result<(), CliError> {
    let Some(path) = cache else { return Ok(()) };
    match cache_read(path, d) {
        CacheOutcome::Hit(results) => {
            table.preload(results);
            Ok(())
        }
        CacheOutcome::Miss(reason) => {
            if reason != "no cache file" {
                eprintln!(
                    "warning: cache at {} ignored ({reason}); recomputing",
                    path.display()
                );
            }
            let swept = table.sweep();
            let owned: Vec<ProjectionResult> = swept.iter().map(|cell| (**cell).clone()).collect();
            cache_write(path, d, &owned)
                .map_err(|e| CliError::Input(format!("cannot write cache {}: {e}", path.display())))
        }
    }
}

fn cmd_polarity(config: &RunConfig) -> Result<Outcome, CliError> {
    let d = config.dichotomy()?;
    let scan = polarity_scan(&d);
    let strong = scan.qualifying.len() == 1;
    let record = PolarityRecord {
        strong,
        polarity: strong.then(|| scan.qualifying[0].into()),
        qualifying: scan
            .qualifying
            .iter()
            .map(|&p| AffineRecord::from(p))
            .collect(),
        scanned: scan.scanned,
    };
    let report = Report {
        command: "polarity".to_string(),
        config: config.config_record()?,
        result: ResultRecord::Polarity(record),
        paper_diff: None,
    };
    Ok(Outcome {
        report,
        exit: if strong { 0 } else { 2 },
    })
}

fn cmd_dichotomies(config: &RunConfig, count_only: bool) -> Result<Outcome, CliError> {
    let all = enumerate_strong(config.modulus());
    let record = DichotomiesRecord {
        count: all.len(),
        entries: (!count_only).then(|| all.iter().map(DichotomyRecord::from).collect()),
    };
    // Enumeration depends on the modulus alone; the consonance flag plays
    // no role here.
    let config_record = crate::report::ConfigRecord {
        modulus: config.modulus().get(),
        consonances: Vec::new(),
        params: params(&[("count_only", count_only.to_string())]),
    };
    let report = Report {
        command: "dichotomies".to_string(),
        config: config_record,
        result: ResultRecord::Dichotomies(record),
        paper_diff: None,
    };
    Ok(Outcome { report, exit: 0 })
}

fn cmd_projections(
    config: &RunConfig,
    y: Option<i64>,
    z: Option<i64>,
    all: bool,
    oracle: bool,
    cache: Option<&Path>,
) -> Result<Outcome, CliError> {
    let d = config.strong_dichotomy()?;
    let m = d.modulus();
    let table = ProjectionTable::new(d.clone());
    prime_cache(&table, &d, cache)?;

    let cells: Vec<Arc<ProjectionResult>> = if all {
        table.sweep()
    } else {
        let (Some(y), Some(z)) = (y, z) else {
            return Err(CliError::Input(
                "provide both -y and -z, or pass --all".to_string(),
            ));
        };
        vec![table
            .second_species(m.residue(y), m.residue(z))
            .map_err(engine_error)?]
    };

    let oracle_record = if oracle {
        let slow = Oracle::new(&d);
        let mut matches = true;
        for cell in &cells {
            let reference = slow.projections(cell.y(), cell.z()).map_err(engine_error)?;
            if reference != **cell {
                matches = false;
            }
        }
        Some(OracleRecord {
            matches,
            cells_checked: cells.len(),
        })
    } else {
        None
    };

    let exit = match &oracle_record {
        Some(r) if !r.matches => 3,
        _ => 0,
    };
    let summary = all.then(|| {
        let (lower, upper) = cells[0].successor_bounds();
        let scores: Vec<usize> = cells.iter().map(|c| c.max_score()).collect();
        let unions: Vec<usize> = cells.iter().map(|c| c.successors().len()).collect();
        crate::report::SweepSummary {
            cells: cells.len(),
            bounds: [lower, upper],
            score_range: [
                *scores.iter().min().expect("non-empty sweep"),
                *scores.iter().max().expect("non-empty sweep"),
            ],
            all_scores_within_bounds: cells.iter().all(|c| c.score_within_bounds()),
            union_range: [
                *unions.iter().min().expect("non-empty sweep"),
                *unions.iter().max().expect("non-empty sweep"),
            ],
            union_outliers: unions
                .iter()
                .filter(|&&n| !(lower..=upper).contains(&n))
                .count(),
        }
    });
    let record = ProjectionsRecord {
        cells: cells.iter().map(|cell| CellRecord::from(&**cell)).collect(),
        summary,
        oracle: oracle_record,
    };
    let mut config_record = config.config_record()?;
    config_record.params = if all {
        params(&[("all", "true".to_string()), ("oracle", oracle.to_string())])
    } else {
        params(&[
            ("y", y.unwrap_or_default().to_string()),
            ("z", z.unwrap_or_default().to_string()),
            ("oracle", oracle.to_string()),
        ])
    };
    let report = Report {
        command: "projections".to_string(),
        config: config_record,
        result: ResultRecord::Projections(record),
        paper_diff: None,
    };
    Ok(Outcome { report, exit })
}

fn cmd_successors(
    config: &RunConfig,
    interval: &[i64],
    matrix: bool,
    oracle: bool,
    cache: Option<&Path>,
) -> Result<Outcome, CliError> {
    let [c, x, y] = interval else {
        return Err(CliError::Input(format!(
            "--interval wants exactly three components c,x,y, got {}",
            interval.len()
        )));
    };
    let d = config.strong_dichotomy()?;
    let m = d.modulus();
    let xi = TwoInterval::from_values(m, *c, *x, *y);
    let table = ProjectionTable::new(d.clone());
    prime_cache(&table, &d, cache)?;

    let cell = table
        .second_species(xi.downbeat(), xi.upbeat())
        .map_err(engine_error)?;
    let successors = table.second_species_successors(xi).map_err(engine_error)?;

    let oracle_record = if oracle {
        let reference = Oracle::new(&d)
            .projections(xi.downbeat(), xi.upbeat())
            .map_err(engine_error)?;
        Some(OracleRecord {
            matches: reference == *cell,
            cells_checked: 1,
        })
    } else {
        None
    };
    let exit = match &oracle_record {
        Some(r) if !r.matches => 3,
        _ => 0,
    };

    let (lower, upper) = cell.successor_bounds();
    let record = SuccessorsRecord {
        source: xi.into(),
        max_score: cell.max_score(),
        bounds: [lower, upper],
        score_within_bounds: cell.score_within_bounds(),
        successor_count: successors.len(),
        successors: successors
            .iter()
            .map(|&eta| IntervalRecord::from(eta))
            .collect(),
        projections: cell
            .projections()
            .iter()
            .map(ProjectionRecord::from)
            .collect(),
        matrix_form: matrix,
        oracle: oracle_record,
    };
    let mut config_record = config.config_record()?;
    config_record.params = params(&[
        ("interval", format!("{c},{x},{y}")),
        ("oracle", oracle.to_string()),
    ]);
    let report = Report {
        command: "successors".to_string(),
        config: config_record,
        result: ResultRecord::Successors(record),
        paper_diff: None,
    };
    Ok(Outcome { report, exit })
}

fn cmd_check(
    _config: &RunConfig,
    path: &Path,
    matrix: bool,
    cache: Option<&Path>,
) -> Result<Outcome, CliError> {
    let composition = load_composition(path)?;
    let d = composition.dichotomy().clone();
    let table = ProjectionTable::new(d.clone());
    prime_cache(&table, &d, cache)?;
    let verdicts = composition.validate_with(&table).map_err(fux_error)?;

    let steps: Vec<StepRecord> = verdicts.iter().map(StepRecord::from).collect();
    let rejected_indices: Vec<usize> = steps
        .iter()
        .filter(|s| !s.admitted)
        .map(|s| s.index)
        .collect();
    let all_admitted = rejected_indices.is_empty();
    let record = CheckRecord {
        steps,
        all_admitted,
        rejected_indices,
        matrix_form: matrix,
    };
    // The composition file carries its own dichotomy; report that one.
    let file_config = crate::report::ConfigRecord {
        modulus: d.modulus().get(),
        consonances: d.consonances().iter().map(|r| r.value()).collect(),
        params: params(&[("path", path.display().to_string())]),
    };
    let report = Report {
        command: "check".to_string(),
        config: file_config,
        result: ResultRecord::Check(record),
        paper_diff: None,
    };
    Ok(Outcome {
        report,
        exit: if all_admitted { 0 } else { 2 },
    })
}

fn cmd_compare(
    config: &RunConfig,
    case: u8,
    universe: &str,
    case1_no_fs_step: bool,
    cache: Option<&Path>,
) -> Result<Outcome, CliError> {
    let case = FuxCase::from_number(case)
        .ok_or_else(|| CliError::Input(format!("--case must be 1 or 2, got {case}")))?;
    let universe = UniverseMode::from_label(universe).ok_or_else(|| {
        CliError::Input(format!(
            "--universe must be \"all\" or \"fs-valid\", got {universe:?}"
        ))
    })?;
    let d = config.strong_dichotomy()?;
    let table = ProjectionTable::new(d.clone());
    prime_cache(&table, &d, cache)?;
    let opts = FuxOptions {
        case1_requires_first_species_step: !case1_no_fs_step,
        ..FuxOptions::default()
    };
    let comparison = run_comparison(case, universe, &table, &opts).map_err(fux_error)?;

    let classical = d == StrongDichotomy::classical();
    let diff = classical.then(|| paper_diff(&comparison));
    let mut config_record = config.config_record()?;
    config_record.params = params(&[
        ("case", case.number().to_string()),
        ("universe", universe.label().to_string()),
        (
            "case1_requires_first_species_step",
            (!case1_no_fs_step).to_string(),
        ),
    ]);
    let report = Report {
        command: "compare".to_string(),
        config: config_record,
        result: ResultRecord::Compare(CompareRecord::from(&comparison)),
        paper_diff: diff,
    };
    Ok(Outcome { report, exit: 0 })
}
