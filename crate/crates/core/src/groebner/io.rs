//! Text format for ideals: a `ring:` header line listing variable names, then
//! one generator per line. `#` starts a comment.

use std::sync::Arc;

use super::{GroebnerError, Ideal};
use crate::polyring::{Polynomial, VarRing};

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

pub fn parse_ideal(text: &str) -> Result<Ideal, GroebnerError> {
    let mut ring: Option<Arc<VarRing>> = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        match &ring {
            None => {
                let names = line.strip_prefix("ring:").ok_or_else(|| GroebnerError::File {
                    line: line_no,
                    msg: "expected `ring: <variables>` header".into(),
                })?;
                let names: Vec<String> = names.split_whitespace().map(str::to_string).collect();
                let r = VarRing::new(names).map_err(|e| GroebnerError::File { line: line_no, msg: e.to_string() })?;
                ring = Some(r);
            }
            Some(r) => {
                let p = Polynomial::parse(line, r)
                    .map_err(|e| GroebnerError::File { line: line_no, msg: e.to_string() })?;
                gens.push(p);
            }
        }
    }
    let ring = ring.ok_or(GroebnerError::File { line: 0, msg: "missing `ring:` header".into() })?;
    Ideal::new(&ring, gens)
}

pub fn format_ideal(ring: &VarRing, gens: &[Polynomial]) -> String {
    let mut out = format!("ring: {}\n", ring.names().join(" "));
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
