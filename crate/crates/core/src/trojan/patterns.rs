use std::collections::BTreeSet;

use super::TrojanError;
use crate::aes::Block;

/// Manufacturing test stimulus vectors applied to the plaintext input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TestPatternSet {
    patterns: BTreeSet<Block>,
}

impl TestPatternSet {
    pub fn new() -> TestPatternSet {
        TestPatternSet::default()
    }

    /// One 32-hex-character block per line. Blank lines and anything after
    /// `#` are ignored.
    pub fn parse(text: &str) -> Result<TestPatternSet, TrojanError> {
        let mut set = TestPatternSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let block = Block::from_hex(line).map_err(|e| TrojanError::PatternLine {
                line: i + 1,
                message: e.to_string(),
            })?;
            set.insert(block);
        }
        Ok(set)
    }

    pub fn to_text(&self) -> String {
        self.patterns.iter().map(|b| format!("{b}\n")).collect()
    }

    pub fn insert(&mut self, block: Block) -> bool {
        self.patterns.insert(block)
    }

    pub fn contains(&self, block: &Block) -> bool {
        self.patterns.contains(block)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Block> {
        self.patterns.iter()
    }
}

impl FromIterator<Block> for TestPatternSet {
    fn from_iter<I: IntoIterator<Item = Block>>(iter: I) -> Self {
        TestPatternSet {
            patterns: iter.into_iter().collect(),
        }
    }
}
