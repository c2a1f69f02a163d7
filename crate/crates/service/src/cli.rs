//! Command-line entry point. Exit codes: 0 success, 1 usage, 2 data error,
//! 3 when validation finds violations.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgsu_core::enrichment::{
    assign, ctfidf, evaluate_tables, evaluate_tables_multilabel, metrics_to_csv, nearest_anchor_clusters, parse_schema,
    read_anchors_jsonl, read_docs_jsonl, render_system_prompt, threshold_for_coverage, tokenize, Anchor,
    AssignmentParams, DocVector, LabelTable,
};
use kgsu_core::mapping::parse_mapping;
use kgsu_core::sparql::{QueryResult, Solutions};
use kgsu_core::syntax::serialize_trig;
use serde_json::json;

use crate::config::ServerConfig;
use crate::error::ApiError;
use crate::http::{self, AppState};
use crate::ops::{self, Body, QueryFormat};
use crate::store::Store;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NONCONFORMING: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kgsu", version, about = "Semantic-units knowledge graph engine")]
struct Cli {
    /// Directory holding the persisted store (store.trig).
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Merge a TriG or Turtle file into the store.
    Load { file: PathBuf },
    /// Execute an R2RML mapping over a directory of CSV tables and merge the result into the store.
    Map {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        tables: PathBuf,
        /// Also write the mapped quads to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        canonical: bool,
    },
    /// Run a SPARQL query file against the store.
    Query {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = QueryOutput::Table)]
        format: QueryOutput,
    },
    /// Validate the store against SHACL shapes.
    Validate {
        #[arg(long)]
        shapes: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportOutput::Text)]
        format: ReportOutput,
    },
    /// Semantic units about a resource, or one unit's content.
    Units(UnitsArgs),
    /// Embedding-based enrichment and label evaluation.
    Enrich {
        #[command(subcommand)]
        command: EnrichCommand,
    },
    /// Write the store to a file (default: the store's own path).
    Save {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long)]
        port: Option<u16>,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct UnitsArgs {
    #[arg(long)]
    subject: Option<String>,
    #[command(subcommand)]
    command: Option<UnitsCommand>,
}

#[derive(Subcommand, Debug)]
enum UnitsCommand {
    /// Unit detail, or its node-link view with --vis.
    Show {
        iri: String,
        #[arg(long)]
        vis: bool,
    },
}

#[derive(Subcommand, Debug)]
enum EnrichCommand {
    /// Label documents with their most similar anchors.
    Assign {
        #[arg(long)]
        docs: PathBuf,
        #[arg(long)]
        anchors: PathBuf,
        #[arg(long, default_value_t = 0.3)]
        threshold: f64,
        #[arg(long, default_value_t = 0.03)]
        margin: f64,
        #[arg(long, default_value_t = 2)]
        max_labels: usize,
        /// Choose the threshold that labels at least this fraction of documents.
        #[arg(long)]
        coverage: Option<f64>,
        #[arg(long, value_enum, default_value_t = ReportOutput::Text)]
        format: ReportOutput,
    },
    /// Group documents by nearest anchor and label groups with their top terms.
    Clusters {
        #[arg(long)]
        docs: PathBuf,
        #[arg(long)]
        anchors: PathBuf,
        #[arg(long, default_value_t = 0.3)]
        threshold: f64,
        #[arg(long, default_value_t = 5)]
        top_terms: usize,
        #[arg(long, value_enum, default_value_t = ReportOutput::Text)]
        format: ReportOutput,
    },
    /// Score predicted labels against ground truth.
    Metrics {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// Score every category as a label set.
        #[arg(long)]
        multilabel: bool,
        /// Schema CSV deciding which categories are yes/no.
        #[arg(long)]
        schema: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportOutput::Text)]
        format: ReportOutput,
    },
    /// Render the extraction prompt for a schema CSV.
    Prompt {
        #[arg(long)]
        schema: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum QueryOutput {
    Table,
    Json,
    Trig,
}

/// `text` is a table or CSV, depending on the command.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportOutput {
    Text,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure {
            code: EXIT_DATA,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn data_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DATA,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| data_error(format!("{}: {e}", path.display())))
}

fn emit(body: &Body) {
    print!("{}", body.text);
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn config_for(cli: &Cli) -> Result<ServerConfig, Failure> {
    let mut c = ServerConfig::load(cli.config.as_deref()).map_err(data_error)?;
    if let Some(d) = &cli.data_dir {
        c.data_dir = d.clone();
    }
    Ok(c)
}

fn execute(cli: Cli) -> Outcome {
    let config = config_for(&cli)?;
    let store_path = config.store_path();
    match cli.command {
        Command::Load { file } => {
            let store = Store::open(&store_path)?;
            let body = ops::load(&store, &read(&file)?)?;
            store.save(&store_path)?;
            emit(&body);
            Ok(EXIT_OK)
        }
        Command::Map {
            mapping,
            tables,
            out,
            canonical,
        } => {
            let mapping_text = read(&mapping)?;
            let doc = parse_mapping(&mapping_text).map_err(ApiError::from)?;
            let mut texts = BTreeMap::new();
            for name in doc.table_names() {
                let path = tables.join(format!("{name}.csv"));
                if path.exists() {
                    texts.insert(name, read(&path)?);
                }
            }
            let mapped = ops::map_dataset(&mapping_text, &texts)?;
            if let Some(out) = out {
                let text = if canonical {
                    crate::store::to_trig(&mapped)?
                } else {
                    serialize_trig(&mapped, &doc.prefixes, false).map_err(ApiError::from)?
                };
                std::fs::write(&out, text).map_err(|e| data_error(format!("{}: {e}", out.display())))?;
            }
            let store = Store::open(&store_path)?;
            let body = store.write(|d| {
                let before = d.len();
                d.extend(mapped.iter());
                Ok::<_, Failure>(Body::json(&json!({ "added": d.len() - before, "quads": d.len() })))
            })?;
            store.save(&store_path)?;
            emit(&body);
            Ok(EXIT_OK)
        }
        Command::Query { file, format } => {
            let text = read(&file)?;
            let d = Store::open(&store_path)?.snapshot();
            let max = config.max_query_rows;
            match format {
                QueryOutput::Json => emit(&ops::query_body(&d, &text, QueryFormat::Json, max)?),
                QueryOutput::Trig => emit(&ops::query_body(&d, &text, QueryFormat::Trig, max)?),
                QueryOutput::Table => match ops::run_query(&d, &text)? {
                    QueryResult::Solutions(s) => {
                        let (s, truncated) = ops::truncate(s, max);
                        print!("{}", format_table(&s, truncated));
                    }
                    QueryResult::Triples(_) => emit(&ops::query_body(&d, &text, QueryFormat::Trig, max)?),
                },
            }
            Ok(EXIT_OK)
        }
        Command::Validate { shapes, format } => {
            let shapes_text = read(&shapes)?;
            let d = Store::open(&store_path)?.snapshot();
            let conforms = match format {
                ReportOutput::Json => {
                    let (body, conforms) = ops::validate_body(&d, &shapes_text)?;
                    emit(&body);
                    conforms
                }
                ReportOutput::Text => {
                    let report = ops::validate_report(&d, &shapes_text)?;
                    print!("{}", report.to_text());
                    report.conforms
                }
            };
            Ok(if conforms { EXIT_OK } else { EXIT_NONCONFORMING })
        }
        Command::Units(args) => {
            let d = Store::open(&store_path)?.snapshot();
            let body = match (args.subject, args.command) {
                (Some(subject), None) => ops::units_body(&d, &subject)?,
                (None, Some(UnitsCommand::Show { iri, vis: false })) => ops::unit_body(&d, &iri)?,
                (None, Some(UnitsCommand::Show { iri, vis: true })) => ops::vis_body(&d, &iri)?,
                _ => {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "units needs --subject <iri> or `show <iri>`".into(),
                    })
                }
            };
            emit(&body);
            Ok(EXIT_OK)
        }
        Command::Enrich { command } => enrich(command),
        Command::Save { out } => {
            let target = out.unwrap_or_else(|| store_path.clone());
            let n = Store::open(&store_path)?.save(&target)?;
            emit(&Body::json(
                &json!({ "saved": target.display().to_string(), "quads": n }),
            ));
            Ok(EXIT_OK)
        }
        Command::Serve { port } => {
            let mut config = config;
            if let Some(p) = port {
                config.port = p;
            }
            let state = Arc::new(AppState {
                store: Store::open(&store_path)?,
                config,
            });
            let rt = tokio::runtime::Runtime::new().map_err(|e| data_error(e.to_string()))?;
            rt.block_on(http::serve(state)).map_err(|e| data_error(e.to_string()))?;
            Ok(EXIT_OK)
        }
    }
}

/// Left-aligned columns of N-Triples terms; absent bindings are blank.
pub fn format_table(s: &Solutions, truncated: bool) -> String {
    let header: Vec<String> = s.variables.iter().map(|v| format!("?{}", v.name())).collect();
    let cells: Vec<Vec<String>> = s
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| t.as_ref().map(ToString::to_string).unwrap_or_default())
                .collect()
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: &[String]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join(" | ").trim_end())
    };
    let mut out = line(&header);
    out.push_str(&format!(
        "{}\n",
        widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")
    ));
    for row in &cells {
        out.push_str(&line(row));
    }
    let n = cells.len();
    out.push_str(&format!(
        "({n} row{}{})\n",
        if n == 1 { "" } else { "s" },
        if truncated { ", truncated" } else { "" }
    ));
    out
}

fn corpus(docs: &Path, anchors: &Path) -> Result<(Vec<DocVector>, Vec<Anchor>), Failure> {
    let d = read_docs_jsonl(&read(docs)?).map_err(ApiError::from)?;
    let a = read_anchors_jsonl(&read(anchors)?).map_err(ApiError::from)?;
    Ok((d, a))
}

fn csv_line(cells: &[String]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(cells).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn enrich(command: EnrichCommand) -> Outcome {
    match command {
        EnrichCommand::Assign {
            docs,
            anchors,
            threshold,
            margin,
            max_labels,
            coverage,
            format,
        } => {
            let (docs, anchors) = corpus(&docs, &anchors)?;
            let mut params = AssignmentParams {
                threshold,
                margin,
                max_labels,
                coverage_target: coverage,
            };
            params.validate().map_err(ApiError::from)?;
            if let Some(target) = coverage {
                params.threshold = threshold_for_coverage(&docs, &anchors, target).map_err(ApiError::from)?;
            }
            let out = assign(&docs, &anchors, &params).map_err(ApiError::from)?;
            match format {
                ReportOutput::Json => emit(&Body::json(&json!({ "params": params, "assignments": out }))),
                ReportOutput::Text => {
                    let mut header = format!(
                        "# threshold={} margin={} max_labels={}",
                        params.threshold, params.margin, params.max_labels
                    );
                    if let Some(t) = coverage {
                        header.push_str(&format!(" coverage_target={t}"));
                    }
                    println!("{header}");
                    print!(
                        "{}",
                        csv_line(&["doc_id", "labels", "similarities", "top1", "margin"].map(String::from))
                    );
                    for a in &out {
                        let ids: Vec<&str> = a.labels.iter().map(|l| l.anchor_id.as_str()).collect();
                        let sims: Vec<String> = a.labels.iter().map(|l| format!("{:.4}", l.similarity)).collect();
                        print!(
                            "{}",
                            csv_line(&[
                                a.doc_id.clone(),
                                ids.join(";"),
                                sims.join(";"),
                                format!("{:.4}", a.top1),
                                a.margin.map(|m| format!("{m:.4}")).unwrap_or_default(),
                            ])
                        );
                    }
                }
            }
            Ok(EXIT_OK)
        }
        EnrichCommand::Clusters {
            docs,
            anchors,
            threshold,
            top_terms,
            format,
        } => {
            if top_terms == 0 {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: "--top-terms must be at least 1".into(),
                });
            }
            let (docs, anchors) = corpus(&docs, &anchors)?;
            let clusters = nearest_anchor_clusters(&docs, &anchors, threshold).map_err(ApiError::from)?;
            let text: BTreeMap<&str, &str> = docs
                .iter()
                .map(|d| (d.id.as_str(), d.text.as_deref().unwrap_or("")))
                .collect();
            let tokens: BTreeMap<String, Vec<Vec<String>>> = clusters
                .clusters
                .iter()
                .map(|c| {
                    (
                        c.anchor_id.clone(),
                        c.member_ids.iter().map(|id| tokenize(text[id.as_str()])).collect(),
                    )
                })
                .collect();
            let terms = ctfidf(&tokens, top_terms);
            match format {
                ReportOutput::Json => {
                    let rows: Vec<_> = clusters
                        .clusters
                        .iter()
                        .map(|c| {
                            let top: Vec<_> = terms[&c.anchor_id]
                                .iter()
                                .map(|(t, w)| json!({ "term": t, "weight": w }))
                                .collect();
                            json!({
                                "anchor_id": c.anchor_id,
                                "label": c.label,
                                "n_docs": c.n_docs,
                                "member_ids": c.member_ids,
                                "top_terms": top,
                            })
                        })
                        .collect();
                    emit(&Body::json(
                        &json!({ "threshold": threshold, "clusters": rows, "noise": clusters.noise }),
                    ));
                }
                ReportOutput::Text => {
                    print!(
                        "{}",
                        csv_line(&["anchor_id", "label", "n_docs", "top_terms"].map(String::from))
                    );
                    for c in &clusters.clusters {
                        let top: Vec<&str> = terms[&c.anchor_id].iter().map(|(t, _)| t.as_str()).collect();
                        print!(
                            "{}",
                            csv_line(&[
                                c.anchor_id.clone(),
                                c.label.clone(),
                                c.n_docs.to_string(),
                                top.join(";")
                            ])
                        );
                    }
                    println!("# noise={}", clusters.noise.len());
                }
            }
            Ok(EXIT_OK)
        }
        EnrichCommand::Metrics {
            pred,
            truth,
            multilabel,
            schema,
            format,
        } => {
            let pred = LabelTable::from_csv_str(&read(&pred)?).map_err(ApiError::from)?;
            let truth = LabelTable::from_csv_str(&read(&truth)?).map_err(ApiError::from)?;
            let rows = if multilabel {
                evaluate_tables_multilabel(&pred, &truth)
            } else {
                let schema = match schema {
                    Some(p) => Some(parse_schema(&read(&p)?).map_err(ApiError::from)?),
                    None => None,
                };
                evaluate_tables(&pred, &truth, schema.as_ref())
            }
            .map_err(ApiError::from)?;
            match format {
                ReportOutput::Json => emit(&Body::json(&rows)),
                ReportOutput::Text => print!("{}", metrics_to_csv(&rows)),
            }
            Ok(EXIT_OK)
        }
        EnrichCommand::Prompt { schema } => {
            let schema = parse_schema(&read(&schema)?).map_err(ApiError::from)?;
            println!("{}", render_system_prompt(&schema));
            Ok(EXIT_OK)
        }
    }
}
