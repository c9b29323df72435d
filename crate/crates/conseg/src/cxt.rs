//! Burmeister `.cxt` contexts.
//!
//! ```text
//! B
//! <optional name>
//! <number of objects>
//! <number of attributes>
//! <blank>
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row of '.'/'X' per object>
//! ```

use std::fmt::Write as _;

use conseg_core::FormalContext;

use crate::error::FormatError;

pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = String::new();
    let _ = write!(out, "B\n\n{}\n{}\n\n", ctx.object_count(), ctx.attribute_count());
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..ctx.object_count() {
        for m in 0..ctx.attribute_count() {
            out.push(if ctx.has(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_cxt(input: &str) -> Result<FormalContext, FormatError> {
    let mut lines = input.lines().map(|l| l.trim_end_matches('\r')).enumerate().map(|(i, l)| (i + 1, l));

    let (n, header) = lines.next().ok_or(FormatError::Missing("header line `B`"))?;
    if header.trim() != "B" {
        return Err(FormatError::at(n, format!("expected `B`, found `{header}`")));
    }
    // The second line holds an optional context name.
    lines.next().ok_or(FormatError::Missing("object count"))?;
    let mut count = |what: &'static str| -> Result<usize, FormatError> {
        let (n, line) = lines.next().ok_or(FormatError::Missing(what))?;
        line.trim().parse().map_err(|_| FormatError::at(n, format!("bad {what} `{line}`")))
    };
    let n_obj = count("object count")?;
    let n_attr = count("attribute count")?;

    let mut rest = lines.peekable();
    if rest.peek().is_some_and(|(_, l)| l.trim().is_empty()) {
        rest.next();
    }
    let mut take = |what: &'static str, k: usize| -> Result<Vec<(usize, String)>, FormatError> {
        (0..k).map(|_| rest.next().map(|(n, l)| (n, l.trim().to_string())).ok_or(FormatError::Missing(what))).collect()
    };
    let objects: Vec<String> = take("object names", n_obj)?.into_iter().map(|(_, s)| s).collect();
    let attributes: Vec<String> = take("attribute names", n_attr)?.into_iter().map(|(_, s)| s).collect();
    let rows = take("incidence rows", n_obj)?;

    let mut incidence = Vec::with_capacity(n_obj);
    for (n, row) in rows {
        let cells: Vec<bool> = row
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                other => Err(FormatError::at(n, format!("unexpected cell `{other}`"))),
            })
            .collect::<Result<_, _>>()?;
        if cells.len() != n_attr {
            return Err(FormatError::at(n, format!("row has {} cells, expected {n_attr}", cells.len())));
        }
        incidence.push(cells);
    }
    Ok(FormalContext::new(objects, attributes, incidence)?)
}
