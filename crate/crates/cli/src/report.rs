use serde_json::Value;

/// What a subcommand produces.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub human: String,
    pub csv: Option<String>,
    /// set when the oracle contradicts a decider
    pub disagreement: Option<String>,
}

impl Report {
    pub fn new(json: Value, human: String) -> Self {
        Report {
            json,
            human,
            csv: None,
            disagreement: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn disagree_unless(mut self, ok: bool, what: impl Into<String>) -> Self {
        if !ok && self.disagreement.is_none() {
            self.disagreement = Some(what.into());
        }
        self
    }
}

/// Pretty JSON with sorted keys.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

/// Left-aligned table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.clone()));
        out.push('\n');
    }
    out
}
