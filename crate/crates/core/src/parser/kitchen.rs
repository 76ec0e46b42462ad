use serde::Deserialize;

use crate::error::ParseError;
use crate::graph::KitchenState;
use crate::node::ObjectNode;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct KitchenEntry {
    label: String,
    states: Vec<String>,
    #[serde(default)]
    ingredients: Vec<String>,
}

/// Reads a JSON list of `{label, states, ingredients?}` entries.
pub fn parse_kitchen(text: &str) -> Result<KitchenState, ParseError> {
    let entries: Vec<KitchenEntry> =
        serde_json::from_str(text).map_err(|e| ParseError::MalformedDocument(e.to_string()))?;
    let mut kitchen = KitchenState::new();
    for (i, entry) in entries.iter().enumerate() {
        let node = ObjectNode::new(&entry.label, &entry.states, &entry.ingredients)
            .map_err(|e| ParseError::MalformedDocument(format!("entry {i}: {e}")))?;
        kitchen.insert(&node);
    }
    Ok(kitchen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_list() {
        assert!(parse_kitchen("[]").unwrap().is_empty());
    }

    #[test]
    fn duplicates_collapse() {
        let k = parse_kitchen(r#"[{"label":"egg","states":["raw"]},{"label":"Egg","states":["raw"]}]"#).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k.contains("egg|raw|"));
    }

    #[test]
    fn ingredients_are_part_of_the_key() {
        let k = parse_kitchen(r#"[{"label":"bowl","states":[],"ingredients":["salt","egg"]}]"#).unwrap();
        assert!(k.contains("bowl||egg,salt"));
    }

    #[test]
    fn malformed_documents() {
        for doc in [
            r#"[{"states":["raw"]}]"#,
            r#"[{"label":"egg","states":"raw"}]"#,
            r#"[{"label":"egg"}]"#,
            r#"{"label":"egg","states":[]}"#,
            r#"[{"label":"","states":[]}]"#,
            "not json",
        ] {
            assert!(
                matches!(parse_kitchen(doc), Err(ParseError::MalformedDocument(_))),
                "{doc}"
            );
        }
    }
}
