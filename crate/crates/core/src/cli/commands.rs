use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    CliError, FindArgs, GenArgs, GenKind, Report, SearchArgs, SearchMode, SolveArgs, TableArgs, TableMethod,
    VerifyArgs, EXIT_BUDGET, EXIT_OK, EXIT_VERIFY,
};
use crate::extremal::{
    anneal_chains, enumerate_min_pp, write_record, AnnealCheckpoint, AnnealConfig, Annealer, SearchError, SearchRecord, CSV_HEADER,
};
use crate::proof::{find_kth_power_path, FinderConfig, RegularityParams};
use crate::rng::derive_seed;
use crate::solver::{greedy_power_path, longest_power_path_exact, PowerPath, SolveBudget};
use crate::tournament::Tournament;
use crate::trn::{read_trn, write_trn};

fn read_tournament(path: &Path) -> Result<Tournament, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    read_trn(&bytes).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn manifest_next_to(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Witnesses leave the process only after passing verification.
fn self_verify(t: &Tournament, p: &PowerPath) {
    if let Err(e) = p.verify(t) {
        panic!("self-verification failed: {e}");
    }
}

fn emit_witness(p: &PowerPath, out: Option<&Path>, report: &mut Report) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_file(path, (p.to_json() + "\n").as_bytes())?;
            report.outputs.push(path.to_path_buf());
            report.manifest_at = Some(manifest_next_to(path));
        }
        None => println!("{}", p.to_json()),
    }
    Ok(())
}

pub fn gen(a: &GenArgs) -> Result<Report, CliError> {
    let usage = |e: crate::tournament::TournamentError| CliError::Usage(e.to_string());
    let t = match a.kind {
        GenKind::Random => Tournament::random(a.n, a.seed),
        GenKind::Transitive => Tournament::transitive(a.n),
        GenKind::Rotational => Tournament::rotational(a.n, &a.residues.iter().copied().collect()),
    }
    .map_err(usage)?;
    let bytes = write_trn(&t);
    let mut report = Report {
        seed: Some(a.seed),
        ..Default::default()
    };
    match &a.out {
        Some(path) => {
            write_file(path, &bytes)?;
            println!("{} n={}", path.display(), a.n);
            report.outputs.push(path.clone());
            report.manifest_at = Some(manifest_next_to(path));
        }
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(report)
}

pub fn solve(a: &SolveArgs) -> Result<Report, CliError> {
    if a.k == 0 {
        return Err(CliError::Usage("k must be positive".into()));
    }
    let t = read_tournament(&a.input)?;
    let defaults = SolveBudget::default();
    let budget = SolveBudget {
        max_states: a.budget_states.unwrap_or(defaults.max_states),
        max_millis: a.budget_ms.unwrap_or(defaults.max_millis),
    };
    let mut report = Report {
        inputs: vec![a.input.clone()],
        seed: Some(a.seed),
        ..Default::default()
    };
    let (path, method) = if a.exact {
        match longest_power_path_exact(&t, a.k, budget) {
            Ok(p) => (p, "exact"),
            Err(e) => {
                eprintln!("budget exceeded after {} states, {} ms; witness is a lower bound", e.states, e.millis);
                report.code = EXIT_BUDGET;
                (e.best, "exact-lower-bound")
            }
        }
    } else {
        (greedy_power_path(&t, a.k, a.seed), "greedy")
    };
    self_verify(&t, &path);
    println!("pp={} method={method} verified=true", path.len());
    emit_witness(&path, a.out.as_deref(), &mut report)?;
    Ok(report)
}

pub fn find(a: &FindArgs) -> Result<Report, CliError> {
    if a.k == 0 {
        return Err(CliError::Usage("k must be positive".into()));
    }
    let params = RegularityParams {
        eps: a.eps,
        delta: a.delta,
        parts: a.parts,
        samples: a.samples,
    };
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let t = read_tournament(&a.input)?;
    let cfg = FinderConfig {
        params,
        seed: a.seed,
        base_case: a.base_case,
        max_depth: a.max_depth,
        exact_budget: SolveBudget::default(),
    };
    let r = find_kth_power_path(&t, a.k, &cfg);
    self_verify(&t, &r.path);
    println!("len={} k={} verified=true", r.path.len(), a.k);
    let mut report = Report {
        inputs: vec![a.input.clone()],
        seed: Some(a.seed),
        ..Default::default()
    };
    emit_witness(&r.path, a.out.as_deref(), &mut report)?;
    if let Some(tr) = &a.trace {
        write_file(tr, r.trace_jsonl().as_bytes())?;
        report.outputs.push(tr.clone());
        report.manifest_at.get_or_insert_with(|| manifest_next_to(tr));
    }
    Ok(report)
}

pub fn verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let t = read_tournament(&a.input)?;
    let text = fs::read_to_string(&a.witness).map_err(|e| CliError::io(&a.witness, e))?;
    let p = PowerPath::from_json(&text).map_err(|e| CliError::Format(format!("{}: {e}", a.witness.display())))?;
    let code = match p.verify(&t) {
        Ok(()) => {
            println!("OK k={} len={}", p.k, p.len());
            EXIT_OK
        }
        Err(e) => {
            println!("FAIL {e}");
            EXIT_VERIFY
        }
    };
    Ok(Report {
        code,
        inputs: vec![a.input.clone(), a.witness.clone()],
        ..Default::default()
    })
}

/// Checkpoint file of a single-chain anneal: the chain state plus the CSV
/// rows written so far.
#[derive(Debug, Serialize, Deserialize)]
struct SearchCheckpoint {
    anneal: AnnealCheckpoint,
    rows: Vec<String>,
}

fn search_error(e: SearchError) -> CliError {
    CliError::Usage(e.to_string())
}

fn write_csv(path: &Path, rows: &[String]) -> Result<(), CliError> {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(r);
        text.push('\n');
    }
    write_file(path, text.as_bytes())
}

pub fn search(a: &SearchArgs) -> Result<Report, CliError> {
    let dir = &a.out_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let csv = dir.join("results.csv");
    let mut report = Report {
        seed: Some(a.seed),
        manifest_at: Some(dir.join("manifest.json")),
        outputs: vec![csv.clone()],
        ..Default::default()
    };
    let record_row = |r: &SearchRecord| write_record(dir, r).map_err(|e| CliError::io(dir, e));

    if a.mode == SearchMode::Enumerate {
        if a.resume.is_some() {
            return Err(CliError::Usage("--resume applies to annealing only".into()));
        }
        let n = a.n.expect("clap requires --n without --resume");
        let e = enumerate_min_pp(n, a.k).map_err(search_error)?;
        let rec = e.record();
        self_verify(&rec.tournament, &rec.witness);
        write_csv(&csv, &[record_row(&rec)?])?;
        println!("min_pp={} minimizers={} total={}", e.min, e.minimizers, e.total);
        return Ok(report);
    }

    if a.chains != 1 {
        if a.resume.is_some() || a.stop_after.is_some() {
            return Err(CliError::Usage("--resume and --stop-after need --chains 1".into()));
        }
        let n = a.n.expect("clap requires --n without --resume");
        let cfg = anneal_config(a);
        let out = anneal_chains(n, a.k, &cfg, a.chains, a.max_states).map_err(search_error)?;
        let mut rows = Vec::new();
        for r in &out.records {
            self_verify(&r.tournament, &r.witness);
            rows.push(record_row(r)?);
        }
        write_csv(&csv, &rows)?;
        let best = out.records.iter().map(|r| r.pp).min().unwrap_or(0);
        println!("best_pp={best} records={}", rows.len());
        if out.exhausted {
            report.code = EXIT_BUDGET;
        }
        return Ok(report);
    }

    let checkpoint = dir.join("checkpoint.json");
    let (mut annealer, mut rows) = match &a.resume {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let c: SearchCheckpoint =
                serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
            report.inputs.push(path.clone());
            (Annealer::from_checkpoint(c.anneal).map_err(search_error)?, c.rows)
        }
        None => {
            let n = a.n.expect("clap requires --n without --resume");
            let (annealer, first) = Annealer::new(n, a.k, 0, anneal_config(a), a.max_states).map_err(search_error)?;
            self_verify(&first.tournament, &first.witness);
            (annealer, vec![record_row(&first)?])
        }
    };
    if a.checkpoint_every == 0 {
        return Err(CliError::Usage("--checkpoint-every must be positive".into()));
    }
    let total = annealer.config().iterations;
    let stop = a.stop_after.unwrap_or(total).min(total);
    let save = |annealer: &Annealer, rows: &[String]| -> Result<(), CliError> {
        write_csv(&csv, rows)?;
        let c = SearchCheckpoint {
            anneal: annealer.checkpoint(),
            rows: rows.to_vec(),
        };
        write_file(&checkpoint, (serde_json::to_string(&c).expect("checkpoint serializes") + "\n").as_bytes())
    };
    while annealer.iteration() < stop {
        let next = ((annealer.iteration() / a.checkpoint_every + 1) * a.checkpoint_every).min(stop);
        for r in annealer.run_until(next) {
            self_verify(&r.tournament, &r.witness);
            rows.push(record_row(&r)?);
        }
        save(&annealer, &rows)?;
    }
    save(&annealer, &rows)?;
    report.outputs.push(checkpoint.clone());
    if annealer.iteration() < total {
        println!(
            "stopped at iteration {}; continue with --resume {}",
            annealer.iteration(),
            checkpoint.display()
        );
    }
    println!("best_pp={} records={}", annealer.best_pp(), rows.len());
    if annealer.exhausted() {
        report.code = EXIT_BUDGET;
    }
    Ok(report)
}

fn anneal_config(a: &SearchArgs) -> AnnealConfig {
    AnnealConfig {
        iterations: a.iters,
        initial_temperature: a.t0,
        cooling_rate: a.cooling,
        moves_per_step: a.moves_per_step,
        seed: a.seed,
    }
}

/// `a..b` (inclusive) or a comma-separated list.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad --n-list {s:?}"));
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let ns: Vec<usize> = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?..=parse(hi)?).collect(),
        None => s.split(',').map(parse).collect::<Result<_, _>>()?,
    };
    if ns.is_empty() || ns.contains(&0) {
        return Err(bad());
    }
    Ok(ns)
}

pub const TABLE_HEADER: &str = "n,seed,method,length,millis";

pub fn table(a: &TableArgs) -> Result<Report, CliError> {
    let ns = parse_n_list(&a.n_list)?;
    if a.k == 0 {
        return Err(CliError::Usage("k must be positive".into()));
    }
    if a.method == TableMethod::Exact && ns.iter().any(|&n| n > 64) {
        return Err(CliError::Usage("--method exact supports n <= 64".into()));
    }
    let jobs: Vec<(usize, usize)> = ns.iter().flat_map(|&n| (0..a.trials).map(move |i| (n, i))).collect();
    let rows: Vec<(String, bool)> = jobs
        .par_iter()
        .map(|&(n, trial)| {
            let seed = derive_seed(a.seed, &format!("table/{n}/{trial}"));
            let t = Tournament::random(n, seed).expect("n > 0");
            let start = Instant::now();
            let (p, exhausted, name) = match a.method {
                TableMethod::Exact => match longest_power_path_exact(&t, a.k, SolveBudget::default()) {
                    Ok(p) => (p, false, "exact"),
                    Err(e) => (e.best, true, "exact"),
                },
                TableMethod::Find => {
                    let cfg = FinderConfig {
                        seed,
                        ..Default::default()
                    };
                    (find_kth_power_path(&t, a.k, &cfg).path, false, "find")
                }
                TableMethod::Greedy => (greedy_power_path(&t, a.k, seed), false, "greedy"),
            };
            let millis = if a.no_timing { 0 } else { start.elapsed().as_millis() };
            self_verify(&t, &p);
            (format!("{n},{seed},{name},{},{millis}", p.len()), exhausted)
        })
        .collect();
    let mut text = String::from(TABLE_HEADER);
    text.push('\n');
    for (r, _) in &rows {
        text.push_str(r);
        text.push('\n');
    }
    let mut report = Report {
        seed: Some(a.seed),
        ..Default::default()
    };
    if rows.iter().any(|(_, ex)| *ex) {
        eprintln!("some exact solves hit the budget; their lengths are lower bounds");
        report.code = EXIT_BUDGET;
    }
    match &a.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            report.outputs.push(path.clone());
            report.manifest_at = Some(manifest_next_to(path));
        }
        None => print!("{text}"),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("4..12").unwrap().len(), 9);
        assert_eq!(parse_n_list("64,128, 256").unwrap(), vec![64, 128, 256]);
        assert!(parse_n_list("").is_err());
        assert!(parse_n_list("0,3").is_err());
        assert!(parse_n_list("a..b").is_err());
    }
}
