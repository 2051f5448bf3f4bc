//! The on-disk design document: a small, stable JSON shape that round-trips
//! exactly, including block order.

use ryser_core::design::system_from_lists;
use ryser_core::SetSystem;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version stamp written into every document this tool emits.
pub const FORMAT_VERSION: u32 = 1;

/// A design as it appears in a file: `format_version`, the universe size
/// `v`, one strictly ascending index list per block, and optional metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignDocument {
    pub format_version: u32,
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<DocumentMetadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Free-form provenance: which seed or transformation produced this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    /// Not valid JSON at all; the message carries line and column.
    #[error("malformed document: {message}")]
    Syntax { message: String },
    #[error("unsupported format version {found}; this tool reads version {expected}")]
    UnsupportedVersion { found: u32, expected: u32 },
    #[error("v must be at least 1")]
    ZeroUniverse,
    #[error("document lists {got} blocks but v = {v} requires exactly {v}")]
    BlockCountMismatch { v: usize, got: usize },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error(
        "block {block} is not strictly ascending at position {position}: \
         {prev} is followed by {next}"
    )]
    NotAscending {
        block: usize,
        position: usize,
        prev: usize,
        next: usize,
    },
    #[error("block {block}, position {position}: point {index} is out of range for v = {v}")]
    IndexOutOfRange {
        block: usize,
        position: usize,
        index: usize,
        v: usize,
    },
    #[error("blocks {first} and {second} are identical")]
    DuplicateBlock { first: usize, second: usize },
}

/// Wraps a system (plus optional metadata) into a writable document.
pub fn document_from_system(
    system: &SetSystem,
    metadata: Option<DocumentMetadata>,
) -> DesignDocument {
    DesignDocument {
        format_version: FORMAT_VERSION,
        v: system.v(),
        blocks: system.blocks().iter().map(|b| b.to_vec()).collect(),
        metadata,
    }
}

/// Renders a document as pretty-printed JSON with a trailing newline. Field
/// order is the struct order, so equal documents serialize byte-identically.
pub fn serialize(doc: &DesignDocument) -> String {
    let mut text =
        serde_json::to_string_pretty(doc).expect("a design document always serializes");
    text.push('\n');
    text
}

/// Parses and fully validates a document, returning both the in-memory
/// system and the document itself (metadata included, so that
/// parse(serialize(d)) == d).
pub fn parse(text: &str) -> Result<(SetSystem, DesignDocument), ParseError> {
    let doc: DesignDocument = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        message: e.to_string(),
    })?;

    if doc.format_version != FORMAT_VERSION {
        return Err(ParseError::UnsupportedVersion {
            found: doc.format_version,
            expected: FORMAT_VERSION,
        });
    }
    if doc.v == 0 {
        return Err(ParseError::ZeroUniverse);
    }
    if doc.blocks.len() != doc.v {
        return Err(ParseError::BlockCountMismatch {
            v: doc.v,
            got: doc.blocks.len(),
        });
    }
    for (bi, block) in doc.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(ParseError::EmptyBlock { block: bi });
        }
        for (pos, &point) in block.iter().enumerate() {
            if point >= doc.v {
                return Err(ParseError::IndexOutOfRange {
                    block: bi,
                    position: pos,
                    index: point,
                    v: doc.v,
                });
            }
            if pos > 0 && block[pos - 1] >= point {
                return Err(ParseError::NotAscending {
                    block: bi,
                    position: pos,
                    prev: block[pos - 1],
                    next: point,
                });
            }
        }
    }
    for i in 0..doc.blocks.len() {
        for j in (i + 1)..doc.blocks.len() {
            if doc.blocks[i] == doc.blocks[j] {
                return Err(ParseError::DuplicateBlock {
                    first: i,
                    second: j,
                });
            }
        }
    }

    let system = system_from_lists(doc.v, &doc.blocks)
        .expect("a validated document always builds a system");
    Ok((system, doc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ryser_core::generators::fano;

    #[test]
    fn round_trip_preserves_everything() {
        let sys = fano();
        let doc = document_from_system(
            &sys,
            Some(DocumentMetadata {
                name: Some("fano".into()),
                seed: Some("difference set {0, 1, 3} mod 7".into()),
            }),
        );
        let text = serialize(&doc);
        let (parsed_sys, parsed_doc) = parse(&text).unwrap();
        assert_eq!(parsed_doc, doc);
        assert_eq!(parsed_sys, sys);
        // Serialization is a pure function of the document.
        assert_eq!(serialize(&parsed_doc), text);
    }

    #[test]
    fn rejects_malformed_json() {
        let err = parse("{ not json").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn rejects_wrong_version() {
        let text = r#"{"format_version": 2, "v": 1, "blocks": [[0]]}"#;
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::UnsupportedVersion { found: 2, .. }
        ));
    }

    #[test]
    fn rejects_block_count_mismatch() {
        let text = r#"{"format_version": 1, "v": 3, "blocks": [[0, 1], [1, 2]]}"#;
        let err = parse(text).unwrap_err();
        assert!(matches!(
            err,
            ParseError::BlockCountMismatch { v: 3, got: 2 }
        ));
        let msg = err.to_string();
        assert!(msg.contains('3') && msg.contains('2'));
    }

    #[test]
    fn rejects_descending_and_duplicate_entries() {
        let text = r#"{"format_version": 1, "v": 3, "blocks": [[1, 0], [0, 1], [0, 2]]}"#;
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::NotAscending {
                block: 0,
                position: 1,
                prev: 1,
                next: 0
            }
        ));
        let text = r#"{"format_version": 1, "v": 3, "blocks": [[0, 0], [0, 1], [0, 2]]}"#;
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::NotAscending { block: 0, .. }
        ));
    }

    #[test]
    fn rejects_out_of_range_point() {
        let text = r#"{"format_version": 1, "v": 3, "blocks": [[0, 3], [0, 1], [0, 2]]}"#;
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::IndexOutOfRange {
                block: 0,
                position: 1,
                index: 3,
                v: 3
            }
        ));
    }

    #[test]
    fn rejects_duplicate_blocks() {
        let text = r#"{"format_version": 1, "v": 3, "blocks": [[0, 1], [2], [0, 1]]}"#;
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::DuplicateBlock { first: 0, second: 2 }
        ));
    }

    #[test]
    fn rejects_empty_block() {
        let text = r#"{"format_version": 1, "v": 2, "blocks": [[], [0]]}"#;
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::EmptyBlock { block: 0 }
        ));
    }
}
