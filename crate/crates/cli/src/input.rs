//! Parsing of command-line values.

use semigroup_forge::valsgp::{Point, ValueTruncation};

use crate::CliError;

pub fn parse_list(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("not a nonnegative integer: {t:?}"))))
        .collect()
}

/// Points written as `(1,2),(2,3)`; a bare `0` is the origin.
pub fn parse_points(s: &str) -> Result<Vec<Point>, CliError> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut points = Vec::new();
    let mut zeros = 0;
    let mut rest = s;
    loop {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        if let Some(body) = rest.strip_prefix('(') {
            let end = body
                .find(')')
                .ok_or_else(|| CliError::Usage(format!("unclosed tuple in {s:?}")))?;
            points.push(parse_list(&body[..end])?);
            rest = &body[end + 1..];
        } else if let Some(after) = rest.strip_prefix('0') {
            zeros += 1;
            rest = after;
        } else {
            return Err(CliError::Usage(format!("cannot read points from {s:?}")));
        }
    }
    let r = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| CliError::Usage("at least one tuple is needed to fix the branch count".into()))?;
    points.extend((0..zeros).map(|_| vec![0; r]));
    Ok(points)
}

/// A truncation from `--elements` text or a JSON file.
pub fn read_truncation(elements: Option<&str>, file: Option<&std::path::Path>) -> Result<ValueTruncation, CliError> {
    match (elements, file) {
        (Some(e), None) => {
            let mut points = parse_points(e)?;
            let r = points[0].len();
            if !points.iter().any(|p| p.iter().all(|&x| x == 0)) {
                points.push(vec![0; r]);
            }
            ValueTruncation::from_elements(points).map_err(|e| CliError::Usage(e.to_string()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        _ => Err(CliError::Usage("give exactly one of --elements or --file".into())),
    }
}

/// `SEMIGROUP_FORGE_SEED` wins over `--seed`.
pub fn resolve_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("SEMIGROUP_FORGE_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("SEMIGROUP_FORGE_SEED is not a u64: {v:?}"))),
        Err(_) => Ok(flag),
    }
}
