//! Machine-readable command reports.
//!
//! A report is the command echo, a digest of the inputs, ordered key–value
//! results and a findings list. Rendering is deterministic in both formats:
//! repeated runs on identical input produce byte-identical output.

use std::fmt::Write as _;

/// Output format of the command front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub findings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) {
        self.inputs.push((key.into(), value.to_string()));
    }

    pub fn result(&mut self, key: impl Into<String>, value: impl ToString) {
        self.results.push((key.into(), value.to_string()));
    }

    pub fn finding(&mut self, text: impl Into<String>) {
        self.findings.push(text.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input {k}: {v}");
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "{k} = {v}");
        }
        if self.findings.is_empty() {
            let _ = writeln!(out, "findings: none");
        } else {
            for f in &self.findings {
                let _ = writeln!(out, "finding: {f}");
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"command\": {},", json_string(&self.command));
        out.push_str("  \"inputs\": {");
        for (i, (k, v)) in self.inputs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\n    {}: {}", json_string(k), json_string(v));
        }
        out.push_str(if self.inputs.is_empty() { "},\n" } else { "\n  },\n" });
        out.push_str("  \"results\": {");
        for (i, (k, v)) in self.results.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\n    {}: {}", json_string(k), json_string(v));
        }
        out.push_str(if self.results.is_empty() { "},\n" } else { "\n  },\n" });
        out.push_str("  \"findings\": [");
        for (i, f) in self.findings.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\n    {}", json_string(f));
        }
        out.push_str(if self.findings.is_empty() { "]\n" } else { "\n  ]\n" });
        out.push_str("}\n");
        out
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("graph");
        r.input("path", "g.txt");
        r.result("c", 3);
        r.result("z_2", 5);
        r.finding("difference at r=2 exceeds cat");
        r
    }

    #[test]
    fn text_rendering_is_ordered() {
        let text = sample().render(Format::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines,
            vec![
                "command: graph",
                "input path: g.txt",
                "c = 3",
                "z_2 = 5",
                "finding: difference at r=2 exceeds cat",
            ]
        );
    }

    #[test]
    fn json_rendering_is_valid_and_deterministic() {
        let a = sample().render(Format::Json);
        let b = sample().render(Format::Json);
        assert_eq!(a, b);
        assert!(a.contains("\"command\": \"graph\""));
        assert!(a.contains("\"z_2\": \"5\""));

        let empty = Report::new("seq").render(Format::Json);
        assert!(empty.contains("\"inputs\": {}"));
        assert!(empty.contains("\"findings\": []"));
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_string("a\"b\\c\nd"), "\"a\\\"b\\\\c\\nd\"");
    }
}
