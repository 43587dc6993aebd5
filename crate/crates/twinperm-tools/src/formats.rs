//! Text front door: permutations one per line, integers separated by
//! commas or spaces; blank lines and `#` comments are skipped.

use twinperm_core::{Error, Permutation};

/// Parses every permutation line in `text`, keeping input order.
pub fn parse_perms(text: &str) -> Result<Vec<Permutation>, Error> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.parse()?);
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("no permutation found in input"));
    }
    Ok(out)
}

/// Parses a position-set family: sets separated by semicolons, 1-based
/// positions inside a set separated by commas, e.g. `1,2;3,4`.
pub fn parse_sets(s: &str) -> Result<Vec<Vec<usize>>, Error> {
    let mut sets = Vec::new();
    for chunk in s.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(Error::InvalidInput("empty set in position-set list"));
        }
        let mut set = Vec::new();
        for tok in chunk.split(',') {
            let tok = tok.trim();
            let pos: usize = tok
                .parse()
                .map_err(|_| Error::InvalidInput("unparsable position in set list"))?;
            set.push(pos);
        }
        sets.push(set);
    }
    Ok(sets)
}
