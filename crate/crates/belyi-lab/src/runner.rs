//! Experiment orchestration: validated configurations, deterministic
//! parallel execution, and persistence with a manifest per run.
//!
//! Determinism contract: identical configs and master seed produce
//! byte-identical data files, independent of worker count or completion
//! order (trials are written by index; floats are printed with 17
//! significant digits).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixing;
use crate::partition::Partition;
use crate::pd;
use crate::stream::derive_stream;
use crate::surface;
use crate::symrep;
use crate::verify;

/// Environment variable overriding the default output directory.
pub const OUT_DIR_ENV: &str = "BELYI_LAB_OUT_DIR";

#[derive(Debug, Clone, Serialize)]
pub enum Command {
    Simulate {
        n: usize,
        k: usize,
        trials: u64,
        export_graphs: bool,
    },
    Mixing {
        degree: u32,
        k: u32,
        mc_trials: Option<u64>,
    },
    Character {
        degree: u32,
        table1: bool,
        dump: bool,
    },
    PdCompare {
        n: usize,
        k: usize,
        trials: u64,
        theta: f64,
    },
    Spectrum {
        n: usize,
        k: usize,
        trials: u64,
        bins: Option<usize>,
    },
    Bounds {
        partition_bound_r: Option<u32>,
        fomin_lulov: Option<(u32, u32)>,
        lower_bounds_n: Option<u32>,
        prop42: Option<(u32, u32, f64)>,
    },
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub master_seed: u64,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

/// Rejects parameter combinations violating any operation's preconditions
/// before any work starts.
pub fn validate(config: &ExperimentConfig) -> Result<()> {
    if config.workers == 0 {
        return Err(Error::InvalidParameter("workers must be ≥ 1".into()));
    }
    match &config.command {
        Command::Simulate { n, k, trials, .. } => {
            if *k < 3 {
                return Err(Error::InvalidParameter(format!("k must be ≥ 3, got {k}")));
            }
            if k * n % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "k·n = {} must be even",
                    k * n
                )));
            }
            if *trials == 0 {
                return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
            }
        }
        Command::Mixing {
            degree,
            k,
            mc_trials,
        } => {
            if *degree > 36 {
                return Err(Error::InvalidParameter(format!(
                    "exact mixing limited to N ≤ 36, got {degree}"
                )));
            }
            if *k == 0 || degree % k != 0 || degree % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "need k | N and 2 | N; got N={degree}, k={k}"
                )));
            }
            if mc_trials == &Some(0) {
                return Err(Error::InvalidParameter("mc trials must be ≥ 1".into()));
            }
        }
        Command::Character {
            degree,
            table1,
            dump,
        } => {
            if !table1 && !dump {
                return Err(Error::InvalidParameter(
                    "character: request --table1 and/or --dump".into(),
                ));
            }
            if *table1 && (*degree < 8 || degree % 2 != 0) {
                return Err(Error::InvalidParameter(format!(
                    "table verification needs even N ≥ 8, got {degree}"
                )));
            }
            if *dump && *degree > 12 {
                return Err(Error::InvalidParameter(format!(
                    "full character dump limited to N ≤ 12, got {degree}"
                )));
            }
        }
        Command::PdCompare {
            n,
            k,
            trials,
            theta,
        } => {
            if *k < 3 || k * n % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "need k ≥ 3 and k·n even; got n={n}, k={k}"
                )));
            }
            if *trials < 10_000 {
                return Err(Error::InvalidParameter(format!(
                    "pd comparison needs ≥ 10^4 spectra, got {trials}"
                )));
            }
            if !(*theta > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "theta must be > 0, got {theta}"
                )));
            }
        }
        Command::Spectrum { n, k, trials, bins } => {
            if *k < 3 || k * n % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "need k ≥ 3 and k·n even; got n={n}, k={k}"
                )));
            }
            if *n > 4096 {
                return Err(Error::InvalidParameter(format!(
                    "dense eigensolve limited to n ≤ 4096, got {n}"
                )));
            }
            if *trials == 0 {
                return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
            }
            if bins == &Some(0) {
                return Err(Error::InvalidParameter("bins must be ≥ 1".into()));
            }
        }
        Command::Bounds {
            partition_bound_r,
            fomin_lulov,
            lower_bounds_n,
            prop42,
        } => {
            if partition_bound_r.is_none()
                && fomin_lulov.is_none()
                && lower_bounds_n.is_none()
                && prop42.is_none()
            {
                return Err(Error::InvalidParameter(
                    "bounds: request at least one sweep".into(),
                ));
            }
            if let Some(r) = partition_bound_r {
                if *r == 0 || *r > 500 {
                    return Err(Error::InvalidParameter(format!(
                        "partition bound sweep needs 1 ≤ r ≤ 500, got {r}"
                    )));
                }
            }
            if let Some((n, k)) = fomin_lulov {
                if *n > 24 || *k == 0 || n % k != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "rim-hook bound needs N ≤ 24 and k | N, got N={n}, k={k}"
                    )));
                }
            }
            if let Some(n) = lower_bounds_n {
                if *n == 0 || *n > 64 {
                    return Err(Error::InvalidParameter(format!(
                        "lower-bound sweep needs 1 ≤ N ≤ 64, got {n}"
                    )));
                }
            }
            if let Some((n, m, t)) = prop42 {
                if *n > 60 || *m < 1 || !(*t > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "partition sum needs N ≤ 60, m ≥ 1, t > 0; got N={n}, m={m}, t={t}"
                    )));
                }
            }
        }
        Command::Verify => {}
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub wall_time_ms: u128,
    pub data_files: Vec<String>,
    /// per-criterion outcomes, present for verify runs
    pub criteria: Option<Vec<verify::CriterionResult>>,
}

impl RunManifest {
    pub fn all_criteria_passed(&self) -> bool {
        self.criteria
            .as_ref()
            .map(|cs| cs.iter().all(|c| c.passed))
            .unwrap_or(true)
    }
}

/// f64 → text with 17 significant digits (round-trip exact).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn create_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path.display().to_string(), e))
}

struct Outputs<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl<'a> Outputs<'a> {
    fn put(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        write_file(&self.dir.join(name), contents)?;
        self.files.push(name.to_string());
        Ok(())
    }
}

/// Executes the configured analysis, writes data files plus `manifest.json`,
/// and returns the manifest.
pub fn run(config: &ExperimentConfig) -> Result<RunManifest> {
    validate(config)?;
    let started = Instant::now();
    create_out_dir(&config.out_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let mut outputs = Outputs {
        dir: &config.out_dir,
        files: Vec::new(),
    };
    let mut criteria = None;

    pool.install(|| -> Result<()> {
        match &config.command {
            Command::Simulate {
                n,
                k,
                trials,
                export_graphs,
            } => {
                let sample = pd::collect_face_samples(*n, *k, *trials, config.master_seed)?;
                let mut csv = String::from("seed,n,k,l,L,genus,face_lengths\n");
                for r in &sample.records {
                    let lengths = r
                        .face_lengths
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(";");
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        r.seed, n, k, r.face_count, r.largest_face, r.genus, lengths
                    ));
                }
                outputs.put("faces.csv", csv.as_bytes())?;
                let summary = pd::face_count_stats(&sample);
                outputs.put("faces_summary.json", &to_json(&summary)?)?;
                if *export_graphs {
                    let gdir = config.out_dir.join("graphs");
                    create_out_dir(&gdir)?;
                    for trial in 0..*trials {
                        let mut rng = derive_stream(config.master_seed, trial);
                        let model = surface::sample_oriented_graph(*n, *k, &mut rng)?;
                        let mut buf = Vec::new();
                        model
                            .write_edge_list(&mut buf)
                            .map_err(|e| Error::io(format!("graphs/trial_{trial}.edges"), e))?;
                        let name = format!("graphs/trial_{trial}.edges");
                        write_file(&config.out_dir.join(&name), &buf)?;
                        outputs.files.push(name);
                    }
                }
            }
            Command::Mixing {
                degree,
                k,
                mc_trials,
            } => {
                let law = mixing::exact_convolution_law(*degree, *k)?;
                let mut csv = String::from("mu,probability_numerator,probability_denominator\n");
                for (mu, p) in law.iter() {
                    csv.push_str(&format!("{},{},{}\n", mu, p.numer(), p.denom()));
                }
                outputs.put("law.csv", csv.as_bytes())?;
                let tv = mixing::tv_to_uniform(&law);
                let bound = mixing::ds_upper_bound(*degree, *k)?;
                let coset = mixing::target_coset(*degree, *k)?;
                #[derive(Serialize)]
                struct BoundReport {
                    #[serde(rename = "N")]
                    n: u32,
                    k: u32,
                    tv_exact: f64,
                    ds_bound: f64,
                    coset: mixing::Parity,
                }
                outputs.put(
                    "bound.json",
                    &to_json(&BoundReport {
                        n: *degree,
                        k: *k,
                        tv_exact: mixing::rational_to_f64(&tv),
                        ds_bound: bound,
                        coset,
                    })?,
                )?;
                if let Some(trials) = mc_trials {
                    let mut rng = derive_stream(config.master_seed, 0);
                    let mc = mixing::mc_convolution_law(*degree, *k, *trials, &mut rng)?;
                    let mut csv =
                        String::from("mu,probability_numerator,probability_denominator\n");
                    for (mu, p) in mc.iter() {
                        csv.push_str(&format!("{},{},{}\n", mu, p.numer(), p.denom()));
                    }
                    outputs.put("mc_law.csv", csv.as_bytes())?;
                    let dist = mixing::tv_between(&mc, &law)?;
                    #[derive(Serialize)]
                    struct McReport {
                        trials: u64,
                        tv_to_exact: f64,
                    }
                    outputs.put(
                        "mc_summary.json",
                        &to_json(&McReport {
                            trials: *trials,
                            tv_to_exact: mixing::rational_to_f64(&dist),
                        })?,
                    )?;
                }
            }
            Command::Character {
                degree,
                table1,
                dump,
            } => {
                if *table1 {
                    let report = symrep::table1_verify(*degree)?;
                    outputs.put("table1.json", &to_json(&report)?)?;
                }
                if *dump {
                    let mut ev = symrep::MnEvaluator::new();
                    let classes: Vec<Partition> =
                        crate::partition::partitions(*degree).collect();
                    let mut csv = String::from("lambda,mu,chi\n");
                    for lam in &classes {
                        for mu in &classes {
                            csv.push_str(&format!(
                                "{},{},{}\n",
                                lam,
                                mu,
                                ev.character(lam, mu)?
                            ));
                        }
                    }
                    outputs.put("characters.csv", csv.as_bytes())?;
                }
            }
            Command::PdCompare {
                n,
                k,
                trials,
                theta,
            } => {
                let sample = pd::collect_face_samples(*n, *k, *trials, config.master_seed)?;
                let mut csv = String::from("trial,seed,n,k,l,L,genus\n");
                for r in &sample.records {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        r.trial, r.seed, n, k, r.face_count, r.largest_face, r.genus
                    ));
                }
                outputs.put("samples.csv", csv.as_bytes())?;
                let report = pd::pd_distance(&sample, *theta, config.master_seed ^ 0x5050_5050)?;
                outputs.put("pd_compare.json", &to_json(&report)?)?;
            }
            Command::Spectrum { n, k, trials, bins } => {
                let spectra: Result<Vec<Vec<f64>>> = (0..*trials)
                    .map(|trial| {
                        let mut rng = derive_stream(config.master_seed, trial);
                        let model = surface::sample_oriented_graph(*n, *k, &mut rng)?;
                        surface::adjacency_spectrum(&model)
                    })
                    .collect();
                let spectra = spectra?;
                let mut csv = String::from("trial,lambda_1,lambda_2\n");
                for (t, ev) in spectra.iter().enumerate() {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        t,
                        fmt_f64(ev[0]),
                        fmt_f64(ev.get(1).copied().unwrap_or(f64::NAN))
                    ));
                }
                outputs.put("spectrum.csv", csv.as_bytes())?;
                if let Some(bins) = bins {
                    let l1 = surface::spectral_l1_vs_kesten_mckay(*k as u32, &spectra, *bins)?;
                    #[derive(Serialize)]
                    struct KmReport {
                        bins: usize,
                        graphs: u64,
                        l1_distance: f64,
                    }
                    outputs.put(
                        "km.json",
                        &to_json(&KmReport {
                            bins: *bins,
                            graphs: *trials,
                            l1_distance: l1,
                        })?,
                    )?;
                }
            }
            Command::Bounds {
                partition_bound_r,
                fomin_lulov,
                lower_bounds_n,
                prop42,
            } => {
                #[derive(Serialize)]
                struct BoundsReport {
                    #[serde(skip_serializing_if = "Option::is_none")]
                    partition_bound: Option<symrep::PartitionBoundReport>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    fomin_lulov: Option<symrep::FominLulovReport>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    lower_bounds: Option<symrep::LowerBoundsReport>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    prop42_sum: Option<f64>,
                }
                let report = BoundsReport {
                    partition_bound: partition_bound_r
                        .map(symrep::partition_count_bound_check)
                        .transpose()?,
                    fomin_lulov: fomin_lulov
                        .map(|(n, k)| symrep::fomin_lulov_check(n, k))
                        .transpose()?,
                    lower_bounds: lower_bounds_n
                        .map(symrep::dimension_lower_bounds_check)
                        .transpose()?,
                    prop42_sum: prop42
                        .map(|(n, m, t)| symrep::prop42_sum(n, m, t))
                        .transpose()?,
                };
                outputs.put("bounds.json", &to_json(&report)?)?;
            }
            Command::Verify => {
                let results = verify::run_all();
                outputs.put("verification.json", &to_json(&results)?)?;
                criteria = Some(results);
            }
        }
        Ok(())
    })?;

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        wall_time_ms: started.elapsed().as_millis(),
        data_files: outputs.files,
        criteria,
    };
    let mut buf = to_json(&manifest)?;
    buf.push(b'\n');
    write_file(&config.out_dir.join("manifest.json"), &buf)?;
    Ok(manifest)
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    serde_json::to_vec_pretty(value)
        .map_err(|e| Error::InvalidParameter(format!("serialization: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config(command: Command, dir: &Path) -> ExperimentConfig {
        ExperimentConfig {
            command,
            master_seed: 42,
            workers: 1,
            out_dir: dir.to_path_buf(),
            format: OutputFormat::Csv,
        }
    }

    #[test]
    fn validation_rejects_precondition_violations() {
        let dir = PathBuf::from("/tmp/unused");
        let bad = [
            Command::Simulate {
                n: 5,
                k: 3,
                trials: 10,
                export_graphs: false,
            },
            Command::Simulate {
                n: 4,
                k: 2,
                trials: 10,
                export_graphs: false,
            },
            Command::Mixing {
                degree: 40,
                k: 2,
                mc_trials: None,
            },
            Command::Mixing {
                degree: 9,
                k: 3,
                mc_trials: None,
            },
            Command::PdCompare {
                n: 64,
                k: 3,
                trials: 100,
                theta: 1.0,
            },
            Command::Spectrum {
                n: 8192,
                k: 3,
                trials: 1,
                bins: None,
            },
            Command::Bounds {
                partition_bound_r: None,
                fomin_lulov: None,
                lower_bounds_n: None,
                prop42: None,
            },
            Command::Character {
                degree: 9,
                table1: true,
                dump: false,
            },
        ];
        for cmd in bad {
            let cfg = base_config(cmd, &dir);
            assert!(validate(&cfg).is_err(), "{:?}", cfg.command);
        }
    }

    #[test]
    fn simulate_writes_deterministic_csv() {
        let t1 = tempfile::tempdir().unwrap();
        let t2 = tempfile::tempdir().unwrap();
        let mk = |dir: &Path, workers: usize| ExperimentConfig {
            command: Command::Simulate {
                n: 16,
                k: 3,
                trials: 50,
                export_graphs: false,
            },
            master_seed: 7,
            workers,
            out_dir: dir.to_path_buf(),
            format: OutputFormat::Csv,
        };
        run(&mk(t1.path(), 1)).unwrap();
        run(&mk(t2.path(), 4)).unwrap();
        let a = fs::read(t1.path().join("faces.csv")).unwrap();
        let b = fs::read(t2.path().join("faces.csv")).unwrap();
        assert_eq!(a, b, "worker count must not change data bytes");
        assert!(t1.path().join("manifest.json").exists());
    }

    #[test]
    fn fmt_f64_is_seventeen_significant_digits() {
        let s = fmt_f64(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        let back: f64 = s.parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
