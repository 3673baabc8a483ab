//! Sweep execution: a worker pool over the task list and a single writer
//! that emits records in task order.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use apery_core::verify::Sign;
use apery_core::{TheoremId, VerificationReport, Verifier};

use crate::error::CliError;
use crate::spec::{Header, SweepSpec, Task};

/// Exit code when every record is `pass` or `conjecture_pass`.
pub const EXIT_OK: u8 = 0;
/// Exit code when at least one record failed.
pub const EXIT_FAIL: u8 = 1;

fn small(task: &Task, name: &str) -> apery_core::Result<u32> {
    let v = task.param(name);
    u32::try_from(v)
        .map_err(|_| apery_core::Error::InvalidParameter(format!("{name}={v} is out of range")))
}

/// Dispatches one task to the matching verifier.
pub fn evaluate(v: &Verifier, task: &Task) -> apery_core::Result<VerificationReport> {
    let p = |name| small(task, name);
    match task.theorem {
        TheoremId::T1E1 => v.verify_integer_sum(p("n")?, p("m")?, p("alpha")?, Sign::Plus),
        TheoremId::T1E2 => v.verify_integer_sum(p("n")?, p("m")?, p("alpha")?, Sign::Minus),
        TheoremId::QtPlus => v.verify_q_sum_plus(p("n")?, p("m")?, p("alpha")?),
        TheoremId::QtMinus => v.verify_q_sum_minus(p("n")?, p("m")?, p("alpha")?),
        TheoremId::QLucas => v.verify_q_lucas(
            task.param("a"),
            task.param("b"),
            task.param("h"),
            task.param("l"),
            task.param("d"),
        ),
        TheoremId::CycLemma => v.verify_cyclotomic_lemma(p("d")?),
        TheoremId::SunFormula => v.verify_sun_formula(p("n")?),
        TheoremId::GuoZeng => v.verify_guo_zeng(p("n")?),
        TheoremId::SunDelannoy => v.verify_sun_delannoy(p("n")?),
        TheoremId::Cancellation => v.verify_cancellation(p("b")?),
        TheoremId::BSymmetry => v.verify_b_symmetry(p("a")?, p("b")?, p("d")?, p("alpha")?),
        TheoremId::Supercong => v.verify_supercongruence(p("p")?),
        TheoremId::DelannoyPowerConj => v.explore_delannoy_power(p("n")?, p("m")?),
    }
}

/// Evaluates `tasks` on `workers` threads and writes one JSON line per task,
/// in order, to `out`. Returns whether every status was a success.
///
/// `elapsed_ms` is attached to each record unless `deterministic` is set.
pub fn run_tasks<W, F>(
    tasks: &[Task],
    workers: usize,
    deterministic: bool,
    eval: &F,
    out: &mut W,
) -> Result<bool, CliError>
where
    W: Write,
    F: Fn(&Task) -> apery_core::Result<VerificationReport> + Sync,
{
    if tasks.is_empty() {
        return Ok(true);
    }
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        for _ in 0..workers.clamp(1, tasks.len()) {
            let tx = tx.clone();
            let (next, stop) = (&next, &stop);
            scope.spawn(move || {
                while !stop.load(Ordering::Relaxed) {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(task) = tasks.get(i) else { break };
                    let start = Instant::now();
                    let result = eval(task).map(|mut report| {
                        report.elapsed_ms =
                            (!deterministic).then(|| start.elapsed().as_millis() as u64);
                        report
                    });
                    if tx.send((i, result)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut cursor = 0;
        let mut all_ok = true;
        let mut emit = |result: apery_core::Result<VerificationReport>| -> Result<(), CliError> {
            let report = result?;
            all_ok &= report.status.is_success();
            serde_json::to_writer(&mut *out, &report).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
            out.flush()?;
            Ok(())
        };
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&cursor) {
                if let Err(e) = emit(result) {
                    stop.store(true, Ordering::Relaxed);
                    return Err(e);
                }
                cursor += 1;
            }
        }
        Ok(all_ok)
    })
}

fn exit_code(all_ok: bool) -> u8 {
    if all_ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Runs `spec` into a fresh file at `path` using the real verifiers.
pub fn run_sweep(spec: &SweepSpec, workers: usize, path: &Path) -> Result<u8, CliError> {
    let verifier = Verifier::new();
    run_sweep_with(spec, workers, path, &|t: &Task| evaluate(&verifier, t))
}

/// [`run_sweep`] with an injected evaluator.
pub fn run_sweep_with<F>(
    spec: &SweepSpec,
    workers: usize,
    path: &Path,
    eval: &F,
) -> Result<u8, CliError>
where
    F: Fn(&Task) -> apery_core::Result<VerificationReport> + Sync,
{
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut out, &Header::for_spec(spec)).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    out.flush()?;
    let all_ok = run_tasks(&spec.tasks(), workers, spec.deterministic, eval, &mut out)?;
    out.flush()?;
    Ok(exit_code(all_ok))
}

/// The reusable prefix of an existing output file.
#[derive(Debug)]
pub struct ResumePoint {
    pub spec: SweepSpec,
    /// Records already present and consistent with the task list.
    pub completed: usize,
    /// Whether all completed records are successes.
    pub all_ok: bool,
    /// Byte length of the valid prefix.
    pub valid_len: u64,
}

/// Reads an output file, validating its header and each record against the
/// expected task order. Scanning stops at the first incomplete, unparsable
/// or out-of-place line.
pub fn scan_output(path: &Path, expected: Option<&SweepSpec>) -> Result<ResumePoint, CliError> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let header_end = bytes.iter().position(|&b| b == b'\n').ok_or_else(|| {
        CliError::usage(format!("{} has no complete header line", path.display()))
    })?;
    let header: Header = serde_json::from_slice(&bytes[..header_end]).map_err(|e| {
        CliError::usage(format!("{} has an unreadable header: {e}", path.display()))
    })?;
    if header.spec.hash() != header.spec_hash {
        return Err(CliError::usage(
            "spec hash in the header does not match its spec",
        ));
    }
    if let Some(spec) = expected {
        if spec.hash() != header.spec_hash {
            return Err(CliError::usage(format!(
                "spec hash mismatch: file has {}, requested sweep is {}",
                header.spec_hash,
                spec.hash()
            )));
        }
    }
    let spec = SweepSpec::new(
        header.spec.theorem,
        header.spec.ranges.clone(),
        header.spec.sign,
        header.spec.deterministic,
    )?;
    let tasks = spec.tasks();

    let mut pos = header_end + 1;
    let mut completed = 0;
    let mut all_ok = true;
    while completed < tasks.len() {
        let Some(len) = bytes[pos..].iter().position(|&b| b == b'\n') else {
            break;
        };
        let Ok(report) = serde_json::from_slice::<VerificationReport>(&bytes[pos..pos + len])
        else {
            break;
        };
        let task = &tasks[completed];
        if report.theorem != task.theorem
            || report.params != task.params_map()
            || report.elapsed_ms.is_some() == spec.deterministic
        {
            break;
        }
        all_ok &= report.status.is_success();
        completed += 1;
        pos += len + 1;
    }
    Ok(ResumePoint {
        spec,
        completed,
        all_ok,
        valid_len: pos as u64,
    })
}

/// Continues an interrupted sweep using the real verifiers.
pub fn resume(path: &Path, workers: usize, expected: Option<&SweepSpec>) -> Result<u8, CliError> {
    let verifier = Verifier::new();
    resume_with(path, workers, expected, &|t: &Task| evaluate(&verifier, t))
}

/// [`resume`] with an injected evaluator. Anything after the valid prefix is
/// discarded and recomputed.
pub fn resume_with<F>(
    path: &Path,
    workers: usize,
    expected: Option<&SweepSpec>,
    eval: &F,
) -> Result<u8, CliError>
where
    F: Fn(&Task) -> apery_core::Result<VerificationReport> + Sync,
{
    let point = scan_output(path, expected)?;
    let file = OpenOptions::new().write(true).open(path)?;
    file.set_len(point.valid_len)?;
    let mut file = file;
    std::io::Seek::seek(&mut file, std::io::SeekFrom::End(0))?;
    let mut out = BufWriter::new(file);
    let tasks = point.spec.tasks();
    let rest_ok = run_tasks(
        &tasks[point.completed..],
        workers,
        point.spec.deterministic,
        eval,
        &mut out,
    )?;
    out.flush()?;
    Ok(exit_code(point.all_ok && rest_ok))
}
