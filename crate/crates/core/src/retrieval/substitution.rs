use std::collections::HashMap;

/// Pre-processed ingredient equivalences: object key to acceptable
/// stand-ins, in preference order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubstitutionMap {
    equivalents: HashMap<String, Vec<String>>,
}

impl SubstitutionMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces the equivalents of `key`. Self references and repeats are dropped.
    pub fn insert(&mut self, key: String, equivalents: Vec<String>) {
        let mut kept: Vec<String> = Vec::with_capacity(equivalents.len());
        for e in equivalents {
            if e != key && !kept.contains(&e) {
                kept.push(e);
            }
        }
        self.equivalents.insert(key, kept);
    }

    pub fn equivalents(&self, key: &str) -> &[String] {
        self.equivalents.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, key: &str) -> bool {
        self.equivalents.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.equivalents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equivalents.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn never_maps_to_itself() {
        let mut m = SubstitutionMap::new();
        m.insert("a||".into(), vec!["a||".into(), "b||".into(), "b||".into()]);
        assert_eq!(m.equivalents("a||"), ["b||"]);
        assert!(m.equivalents("zzz||").is_empty());
    }
}
