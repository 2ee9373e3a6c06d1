//! Report envelope and its JSON, CSV and table renderings.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use factorscan::harness::{self, Counterexample, InstanceRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Exploratory,
    Value,
}

impl From<harness::Verdict> for Verdict {
    fn from(v: harness::Verdict) -> Self {
        match v {
            harness::Verdict::Confirmed => Verdict::Confirmed,
            harness::Verdict::Refuted => Verdict::Refuted,
            harness::Verdict::Exploratory => Verdict::Exploratory,
        }
    }
}

pub struct Outcome {
    verdict: Verdict,
    payload: Value,
    counterexamples: Vec<Value>,
    rows: Option<(Vec<InstanceRecord>, Vec<Counterexample>)>,
}

impl Outcome {
    pub fn new(verdict: Verdict, payload: Value) -> Self {
        Outcome {
            verdict,
            payload,
            counterexamples: Vec::new(),
            rows: None,
        }
    }

    pub fn with_counterexamples(mut self, counterexamples: Vec<Value>) -> Self {
        self.counterexamples = counterexamples;
        self
    }

    pub fn with_rows(
        mut self,
        instances: Vec<InstanceRecord>,
        counterexamples: Vec<Counterexample>,
    ) -> Self {
        self.rows = Some((instances, counterexamples));
        self
    }
}

pub struct Envelope {
    command: String,
    outcome: Outcome,
}

impl Envelope {
    pub fn new(command: String, outcome: Outcome) -> Self {
        Envelope { command, outcome }
    }

    pub fn exit_code(&self) -> u8 {
        match self.outcome.verdict {
            Verdict::Refuted => 1,
            _ => 0,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "verdict": self.outcome.verdict,
            "payload": self.outcome.payload,
            "counterexamples": self.outcome.counterexamples,
        })
    }
}

pub fn emit(env: &Envelope, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(&env.to_json()).expect("json values serialize");
            text.push('\n');
            text
        }
        Format::Csv => csv_rows(env),
        Format::Table => table(env),
    }
}

fn members(set: &factorscan::ResidueSet) -> String {
    set.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_rows(env: &Envelope) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "kind",
        "omega",
        "n",
        "k",
        "params",
        "a",
        "complement",
        "holds",
        "reason",
    ])
    .expect("in-memory csv");
    if let Some((instances, counterexamples)) = &env.outcome.rows {
        for r in instances {
            let params = r
                .params
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                "instance".to_string(),
                r.omega.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                params,
                members(&r.a),
                r.complement.as_ref().map(members).unwrap_or_default(),
                r.holds.to_string(),
                String::new(),
            ])
            .expect("in-memory csv");
        }
        for c in counterexamples {
            w.write_record([
                "counterexample".to_string(),
                c.omega.to_string(),
                c.a.len().to_string(),
                String::new(),
                String::new(),
                members(&c.a),
                c.complement.as_ref().map(members).unwrap_or_default(),
                "false".to_string(),
                c.reason.clone(),
            ])
            .expect("in-memory csv");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(env: &Envelope) -> String {
    let mut rows = vec![
        ("verdict".to_string(), cell(&json!(env.outcome.verdict))),
        ("command".to_string(), env.command.clone()),
    ];
    if let Value::Object(map) = &env.outcome.payload {
        for (k, v) in map {
            if k != "instances" {
                rows.push((k.clone(), cell(v)));
            }
        }
    } else {
        rows.push(("payload".into(), cell(&env.outcome.payload)));
    }
    for (i, c) in env.outcome.counterexamples.iter().enumerate() {
        rows.push((format!("counterexample[{i}]"), cell(c)));
    }
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.into_iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
