use crate::error::ParseError;
use crate::node::ObjectNode;
use crate::retrieval::SubstitutionMap;

/// Splits `k1, k2, ...` where keys may themselves contain commas.
///
/// A piece that contains a `|` opens a new key once the current key has
/// both of its pipes; every other piece continues the current key.
fn split_keys(list: &str) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for piece in list.split(',') {
        match keys.last_mut() {
            Some(cur) if cur.matches('|').count() < 2 || !piece.contains('|') => {
                cur.push(',');
                cur.push_str(piece);
            }
            _ => keys.push(piece.to_string()),
        }
    }
    keys
}

/// Reads `key = key1, key2, ...` lines; `#` starts a comment line.
pub fn parse_substitutions(text: &str) -> Result<SubstitutionMap, ParseError> {
    let mut map = SubstitutionMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = trimmed
            .split_once('=')
            .ok_or_else(|| ParseError::line(line, "expected key = equivalent, ..."))?;
        let canonical = |k: &str| {
            ObjectNode::from_key(k)
                .map(|n| n.key().to_string())
                .map_err(|e| ParseError::line(line, e.to_string()))
        };
        let key = canonical(lhs)?;
        if rhs.trim().is_empty() {
            return Err(ParseError::line(line, "no equivalents listed"));
        }
        let equivalents = split_keys(rhs)
            .iter()
            .map(|k| canonical(k))
            .collect::<Result<Vec<_>, _>>()?;
        if equivalents.contains(&key) {
            return Err(ParseError::line(line, format!("{key:?} lists itself as an equivalent")));
        }
        if map.contains(&key) {
            return Err(ParseError::DuplicateLabel { line, label: key });
        }
        map.insert(key, equivalents);
    }
    Ok(map)
}
