//! The command-line surface: one subcommand per pipeline stage, JSON
//! reports, deterministic output.
//!
//! Every command exits 0 exactly when its report contains no violations or
//! mismatches, 1 when it does, and 2 on usage or input errors. All output
//! is byte-deterministic for a fixed input file and flags.

use crate::bar::{bar_construction, bar_count_report};
use crate::elements::{double_category_of_elements, two_category_of_elements};
use crate::hocolim::hocolim_bisimplicial;
use crate::homology::{compare_models, homology};
use crate::io::{self, LoadError};
use crate::nerve::{nerve_category, nerve_double_category, nerve_two_category};
use crate::simplicial::diagonal;
use crate::thomason::{negative_controls, verify_thomason_iso};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

/// Hard cap on `--max-dim`; larger values would exhaust memory on
/// desk-scale inputs long before producing anything useful.
pub const MAX_DIM: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "catelem",
    about = "categories of elements for 2-functors, their nerves, bar constructions, and homology cross-checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ElementsMode {
    #[value(name = "2cat")]
    TwoCat,
    Double,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NerveKind {
    Cat,
    #[value(name = "2cat")]
    TwoCat,
    Double,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HocolimEmit {
    Bisimplicial,
    Diagonal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a 2-functor document against every strictness axiom.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Construct the 2-category or double category of elements.
    Elements {
        #[arg(long, value_enum)]
        mode: ElementsMode,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nerve of a category, 2-category, or double category document.
    Nerve {
        #[arg(long, value_enum)]
        kind: NerveKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homotopy colimit of a 2-functor, as a bisimplicial set or its
    /// diagonal.
    Hocolim {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        #[arg(long, value_enum, default_value = "bisimplicial")]
        emit: HocolimEmit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bar construction of a bisimplicial set document.
    Bar {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the levelwise isomorphism between the two bar constructions,
    /// or (with --negative-control) reproduce the failures of the naive
    /// comparison maps.
    IsoVerify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long = "negative-control", default_value_t = false)]
        negative_control: bool,
    },
    /// Integer homology of a simplicial set document.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "up-to")]
        up_to: usize,
    },
    /// Compare all five homotopy-type models by integer homology.
    Compare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub struct Outcome {
    pub exit_code: i32,
    pub report: String,
}

#[derive(Serialize)]
struct ErrorReport {
    report_version: u32,
    error: String,
}

fn error_outcome(err: impl std::fmt::Display) -> Outcome {
    Outcome {
        exit_code: 2,
        report: io::to_json_string(&ErrorReport {
            report_version: 1,
            error: err.to_string(),
        }),
    }
}

#[derive(Serialize)]
struct ValidateReport {
    report_version: u32,
    ok: bool,
    report: crate::report::ValidationReport,
}

#[derive(Serialize)]
struct ElementsReport {
    report_version: u32,
    mode: String,
    objects: usize,
    ok: bool,
    written: Option<String>,
}

#[derive(Serialize)]
struct SsetReport {
    report_version: u32,
    name: String,
    level_sizes: Vec<serde_json::Value>,
    validation_ok: bool,
    violations: usize,
    written: Option<String>,
}

fn guard_dim(max_dim: usize) -> Result<(), Outcome> {
    if max_dim > MAX_DIM {
        return Err(error_outcome(format!(
            "--max-dim {max_dim} exceeds the hard cap of {MAX_DIM}"
        )));
    }
    Ok(())
}

fn write_out(path: &Option<PathBuf>, contents: &str) -> Result<Option<String>, LoadError> {
    match path {
        Some(p) => {
            std::fs::write(p, contents)?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

/// Execute one command and produce its exit status and JSON report.
pub fn run_pipeline(command: &Command) -> Outcome {
    match run_inner(command) {
        Ok(outcome) => outcome,
        Err(err) => error_outcome(err),
    }
}

fn run_inner(command: &Command) -> Result<Outcome, LoadError> {
    match command {
        Command::Validate { input } => {
            let text = std::fs::read_to_string(input)?;
            let doc: io::TwoFunctorDoc = serde_json::from_str(&text)?;
            match io::two_functor_from_doc(&doc) {
                Ok(f) => {
                    let report = f.validate();
                    Ok(Outcome {
                        exit_code: i32::from(!report.is_empty()),
                        report: io::to_json_string(&ValidateReport {
                            report_version: 1,
                            ok: report.is_empty(),
                            report,
                        }),
                    })
                }
                Err(LoadError::Validation(report)) => Ok(Outcome {
                    exit_code: 1,
                    report: io::to_json_string(&ValidateReport {
                        report_version: 1,
                        ok: false,
                        report: *report,
                    }),
                }),
                Err(other) => Err(other),
            }
        }
        Command::Elements { mode, input, out } => {
            let f = io::load_two_functor(input)?;
            match mode {
                ElementsMode::TwoCat => {
                    let el = two_category_of_elements(&f);
                    let ok = el.two_cat.validate().is_empty();
                    #[derive(Serialize)]
                    struct WithPairs {
                        #[serde(flatten)]
                        doc: io::TwoCatDoc,
                        pairs: serde_json::Value,
                    }
                    let payload = WithPairs {
                        doc: io::elements_two_to_doc(&el),
                        pairs: io::elements_two_pairs(&el, &f),
                    };
                    let body = io::to_json_string(&payload);
                    let written = write_out(out, &body)?;
                    Ok(Outcome {
                        exit_code: i32::from(!ok),
                        report: io::to_json_string(&ElementsReport {
                            report_version: 1,
                            mode: "2cat".into(),
                            objects: el.two_cat.object_count(),
                            ok,
                            written,
                        }),
                    })
                }
                ElementsMode::Double => {
                    let el = double_category_of_elements(&f);
                    let ok = el.double_cat.validate().is_empty();
                    let mut doc = io::double_category_to_doc(&el.double_cat);
                    doc.pairs = Some(io::elements_double_pairs(&el, &f));
                    let body = io::to_json_string(&doc);
                    let written = write_out(out, &body)?;
                    Ok(Outcome {
                        exit_code: i32::from(!ok),
                        report: io::to_json_string(&ElementsReport {
                            report_version: 1,
                            mode: "double".into(),
                            objects: el.double_cat.object_count(),
                            ok,
                            written,
                        }),
                    })
                }
            }
        }
        Command::Nerve {
            kind,
            input,
            max_dim,
            out,
        } => {
            if let Err(o) = guard_dim(*max_dim) {
                return Ok(o);
            }
            let text = std::fs::read_to_string(input)?;
            match kind {
                NerveKind::Cat => {
                    let doc: io::CatDoc = serde_json::from_str(&text)?;
                    let cat = io::category_from_doc("input", &doc)?;
                    let cat_report = cat.validate();
                    if !cat_report.is_empty() {
                        return Err(LoadError::Validation(Box::new(cat_report)));
                    }
                    let s = nerve_category(&cat, *max_dim);
                    let rep = s.validate();
                    let body = io::to_json_string(&io::simplicial_to_doc(&s));
                    let written = write_out(out, &body)?;
                    Ok(sset_outcome(
                        s.name.clone(),
                        simplicial_sizes(&s),
                        rep,
                        written,
                    ))
                }
                NerveKind::TwoCat => {
                    let doc: io::TwoCatDoc = serde_json::from_str(&text)?;
                    let c = io::two_category_from_doc("input", &doc)?;
                    let c_report = c.validate();
                    if !c_report.is_empty() {
                        return Err(LoadError::Validation(Box::new(c_report)));
                    }
                    let x = nerve_two_category(&c, *max_dim)
                        .map_err(|e| LoadError::Schema(e.to_string()))?;
                    let rep = x.validate();
                    let body = io::to_json_string(&io::bisimplicial_to_doc(&x));
                    let written = write_out(out, &body)?;
                    Ok(sset_outcome(x.name.clone(), bisizes(&x), rep, written))
                }
                NerveKind::Double => {
                    let doc: io::DblCatDoc = serde_json::from_str(&text)?;
                    let d = io::double_category_from_doc("input", &doc)?;
                    let d_report = d.validate();
                    if !d_report.is_empty() {
                        return Err(LoadError::Validation(Box::new(d_report)));
                    }
                    let x = nerve_double_category(&d, *max_dim)
                        .map_err(|e| LoadError::Schema(e.to_string()))?;
                    let rep = x.validate();
                    let body = io::to_json_string(&io::bisimplicial_to_doc(&x));
                    let written = write_out(out, &body)?;
                    Ok(sset_outcome(x.name.clone(), bisizes(&x), rep, written))
                }
            }
        }
        Command::Hocolim {
            input,
            max_dim,
            emit,
            out,
        } => {
            if let Err(o) = guard_dim(*max_dim) {
                return Ok(o);
            }
            let f = io::load_two_functor(input)?;
            let (x, data) =
                hocolim_bisimplicial(&f, *max_dim).map_err(|e| LoadError::Schema(e.to_string()))?;
            let mut rep = data.validate();
            rep.absorb(x.validate());
            let (name, sizes, body) = match emit {
                HocolimEmit::Bisimplicial => (
                    x.name.clone(),
                    bisizes(&x),
                    io::to_json_string(&io::bisimplicial_to_doc(&x)),
                ),
                HocolimEmit::Diagonal => {
                    let d = diagonal(&x);
                    rep.absorb(d.validate());
                    (
                        d.name.clone(),
                        simplicial_sizes(&d),
                        io::to_json_string(&io::simplicial_to_doc(&d)),
                    )
                }
            };
            let written = write_out(out, &body)?;
            Ok(sset_outcome(name, sizes, rep, written))
        }
        Command::Bar {
            input,
            max_dim,
            out,
        } => {
            if let Err(o) = guard_dim(*max_dim) {
                return Ok(o);
            }
            let text = std::fs::read_to_string(input)?;
            let doc: io::SsetDoc = serde_json::from_str(&text)?;
            let x = io::bisimplicial_from_doc(&doc)?;
            let x_report = x.validate();
            if !x_report.is_empty() {
                return Err(LoadError::Validation(Box::new(x_report)));
            }
            let dim = (*max_dim).min(x.dim);
            let w = bar_construction(&x, dim).map_err(|e| LoadError::Schema(e.to_string()))?;
            let rep = w.validate();
            let counts = bar_count_report(&w);
            let body = io::to_json_string(&io::simplicial_to_doc(&w));
            let written = write_out(out, &body)?;
            #[derive(Serialize)]
            struct BarReport {
                report_version: u32,
                counts: crate::bar::BarCountReport,
                validation_ok: bool,
                written: Option<String>,
            }
            let ok = rep.is_empty();
            Ok(Outcome {
                exit_code: i32::from(!ok),
                report: io::to_json_string(&BarReport {
                    report_version: 1,
                    counts,
                    validation_ok: ok,
                    written,
                }),
            })
        }
        Command::IsoVerify {
            input,
            max_dim,
            report,
            negative_control,
        } => {
            if let Err(o) = guard_dim(*max_dim) {
                return Ok(o);
            }
            let f = io::load_two_functor(input)?;
            if *negative_control {
                let controls = negative_controls(&f, *max_dim)
                    .map_err(|e| LoadError::Schema(e.to_string()))?;
                #[derive(Serialize)]
                struct ControlsReport {
                    report_version: u32,
                    controls: crate::thomason::NegativeControlReport,
                }
                let witnessed = controls.all_failures_witnessed();
                let body = io::to_json_string(&ControlsReport {
                    report_version: 1,
                    controls,
                });
                if let Some(p) = report {
                    std::fs::write(p, &body)?;
                }
                // the naive maps are expected to fail; witnesses present
                // means violations present, hence nonzero
                Ok(Outcome {
                    exit_code: i32::from(witnessed),
                    report: body,
                })
            } else {
                let verdict = verify_thomason_iso(&f, *max_dim)
                    .map_err(|e| LoadError::Schema(e.to_string()))?;
                #[derive(Serialize)]
                struct IsoReport {
                    report_version: u32,
                    #[serde(flatten)]
                    verdict: crate::thomason::ThomasonReport,
                }
                let ok = verdict.ok();
                let body = io::to_json_string(&IsoReport {
                    report_version: 1,
                    verdict,
                });
                if let Some(p) = report {
                    std::fs::write(p, &body)?;
                }
                Ok(Outcome {
                    exit_code: i32::from(!ok),
                    report: body,
                })
            }
        }
        Command::Homology { input, up_to } => {
            let text = std::fs::read_to_string(input)?;
            let doc: io::SsetDoc = serde_json::from_str(&text)?;
            let s = io::simplicial_from_doc(&doc)?;
            let s_report = s.validate();
            if !s_report.is_empty() {
                return Err(LoadError::Validation(Box::new(s_report)));
            }
            let table = homology(&s, *up_to).map_err(|e| LoadError::Schema(e.to_string()))?;
            #[derive(Serialize)]
            struct HomReport {
                report_version: u32,
                #[serde(flatten)]
                table: crate::homology::HomologyTable,
            }
            Ok(Outcome {
                exit_code: 0,
                report: io::to_json_string(&HomReport {
                    report_version: 1,
                    table,
                }),
            })
        }
        Command::Compare {
            input,
            max_dim,
            out,
        } => {
            if let Err(o) = guard_dim(*max_dim) {
                return Ok(o);
            }
            if *max_dim == 0 {
                return Ok(error_outcome(
                    "--max-dim 0 leaves no trustworthy homology degree to compare",
                ));
            }
            let f = io::load_two_functor(input)?;
            let report =
                compare_models(&f, *max_dim).map_err(|e| LoadError::Schema(e.to_string()))?;
            let body = io::to_json_string(&report);
            write_out(out, &body)?;
            Ok(Outcome {
                exit_code: i32::from(!report.all_equal),
                report: body,
            })
        }
    }
}

fn simplicial_sizes(s: &crate::simplicial::TruncatedSimplicialSet) -> Vec<serde_json::Value> {
    (0..=s.dim)
        .map(|k| serde_json::json!({"level": k, "size": s.level_size(k)}))
        .collect()
}

fn bisizes(x: &crate::simplicial::TruncatedBisimplicialSet) -> Vec<serde_json::Value> {
    let mut out = Vec::new();
    for m in 0..=x.dim {
        for n in 0..=x.dim {
            out.push(serde_json::json!({"m": m, "n": n, "size": x.level(m, n).len()}));
        }
    }
    out
}

fn sset_outcome(
    name: String,
    level_sizes: Vec<serde_json::Value>,
    rep: crate::report::ValidationReport,
    written: Option<String>,
) -> Outcome {
    let ok = rep.is_empty();
    Outcome {
        exit_code: i32::from(!ok),
        report: io::to_json_string(&SsetReport {
            report_version: 1,
            name,
            level_sizes,
            validation_ok: ok,
            violations: rep.violations.len(),
            written,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    fn fixtures_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
    }

    fn fixture_path(name: &str) -> PathBuf {
        fixtures_dir().join(format!("{name}.json"))
    }

    fn ensure_fixtures() {
        if !fixture_path("point").exists() {
            crate::fixtures::write_all(&fixtures_dir()).unwrap();
        }
    }

    #[test]
    fn validate_and_compare_round() {
        ensure_fixtures();
        let out = run_pipeline(&Command::Validate {
            input: fixture_path("walking_two_cell"),
        });
        assert_eq!(out.exit_code, 0, "{}", out.report);

        let out = run_pipeline(&Command::Compare {
            input: fixture_path("point"),
            max_dim: 3,
            out: None,
        });
        assert_eq!(out.exit_code, 0, "{}", out.report);
    }

    #[test]
    fn compare_is_byte_deterministic() {
        ensure_fixtures();
        let cmd = || Command::Compare {
            input: fixture_path("walking_two_cell"),
            max_dim: 3,
            out: None,
        };
        let a = run_pipeline(&cmd());
        let b = run_pipeline(&cmd());
        assert_eq!(a.report, b.report);
        assert_eq!(a.exit_code, 0);
    }

    #[test]
    fn dim_guard_is_a_flag_error() {
        ensure_fixtures();
        let out = run_pipeline(&Command::Compare {
            input: fixture_path("point"),
            max_dim: 99,
            out: None,
        });
        assert_eq!(out.exit_code, 2);
        assert!(out.report.contains("hard cap"));
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let out = run_pipeline(&Command::Validate {
            input: PathBuf::from("/nonexistent/nope.json"),
        });
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn elements_nerve_bar_homology_chain() {
        ensure_fixtures();
        let dir = std::env::temp_dir().join(format!("catelem-chain-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let dbl = dir.join("dbl.json");
        let out = run_pipeline(&Command::Elements {
            mode: ElementsMode::Double,
            input: fixture_path("walking_two_cell"),
            out: Some(dbl.clone()),
        });
        assert_eq!(out.exit_code, 0, "{}", out.report);

        let nerve = dir.join("nerve.json");
        let out = run_pipeline(&Command::Nerve {
            kind: NerveKind::Double,
            input: dbl,
            max_dim: 3,
            out: Some(nerve.clone()),
        });
        assert_eq!(out.exit_code, 0, "{}", out.report);

        let wbar = dir.join("wbar.json");
        let out = run_pipeline(&Command::Bar {
            input: nerve,
            max_dim: 3,
            out: Some(wbar.clone()),
        });
        assert_eq!(out.exit_code, 0, "{}", out.report);

        let out = run_pipeline(&Command::Homology {
            input: wbar,
            up_to: 2,
        });
        assert_eq!(out.exit_code, 0, "{}", out.report);
        assert!(out.report.contains("\"betti\": 1"));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn corrupted_document_fails_validation_with_exit_one() {
        ensure_fixtures();
        let mut doc = crate::fixtures::doc("walking_two_cell").unwrap();
        doc.on_two_cells
            .get_mut("alpha")
            .unwrap()
            .insert("x'".into(), "phi".into());
        let dir = std::env::temp_dir().join(format!("catelem-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, io::to_json_string(&doc)).unwrap();
        let out = run_pipeline(&Command::Validate { input: path });
        assert_eq!(out.exit_code, 1, "{}", out.report);
        assert!(out.report.contains("\"ok\": false"));
        std::fs::remove_dir_all(&dir).ok();
    }
}
