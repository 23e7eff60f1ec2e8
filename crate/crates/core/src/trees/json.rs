//! JSON documents for both tree kinds, one document per line in corpora.
//!
//! ```text
//! {"kind":"increasing","size":2,"children":{"0":[1,2],"1":[],"2":[]}}
//! {"kind":"relaxed","size":1,"slots":[{"id":1,"left":{"edge":0},"right":{"ptr":0}}]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PlaneIncreasingTree, RelaxedTree, Slot, TreeError};

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Increasing,
    Relaxed,
}

// Flat rather than internally tagged, so that numeric map keys and error
// positions survive deserialization.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    kind: Kind,
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<BTreeMap<usize, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slots: Option<Vec<SlotDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotDoc {
    id: usize,
    left: Slot,
    right: Slot,
}

/// Either tree kind, as read from a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTree {
    Increasing(PlaneIncreasingTree),
    Relaxed(RelaxedTree),
}

impl AnyTree {
    pub fn to_json(&self) -> String {
        match self {
            AnyTree::Increasing(t) => t.to_json(),
            AnyTree::Relaxed(t) => t.to_json(),
        }
    }
}

impl PlaneIncreasingTree {
    pub fn to_json(&self) -> String {
        let children = (0..self.node_count()).map(|v| (v, self.children(v).to_vec())).collect();
        serde_json::to_string(&Doc { kind: Kind::Increasing, size: self.size(), children: Some(children), slots: None }).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        match parse(text)? {
            AnyTree::Increasing(t) => Ok(t),
            AnyTree::Relaxed(_) => Err(TreeError::Parse("expected kind \"increasing\"".into())),
        }
    }
}

impl RelaxedTree {
    pub fn to_json(&self) -> String {
        let slots = self
            .slots()
            .iter()
            .enumerate()
            .map(|(i, &[left, right])| SlotDoc { id: i + 1, left, right })
            .collect();
        serde_json::to_string(&Doc { kind: Kind::Relaxed, size: self.size(), children: None, slots: Some(slots) }).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        match parse(text)? {
            AnyTree::Relaxed(t) => Ok(t),
            AnyTree::Increasing(_) => Err(TreeError::Parse("expected kind \"relaxed\"".into())),
        }
    }
}

/// Parses one document. Schema violations are rejected; relaxed-tree
/// invariants beyond edge counts are left to `validate_relaxed`.
pub fn parse(text: &str) -> Result<AnyTree, TreeError> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| TreeError::Parse(e.to_string()))?;
    let size = doc.size;
    match (doc.kind, doc.children, doc.slots) {
        (Kind::Increasing, Some(children), None) => {
            if children.len() != size + 1 || children.keys().copied().ne(0..=size) {
                return Err(TreeError::Parse(format!("children must list every label 0..={size} exactly once")));
            }
            PlaneIncreasingTree::from_children(children.into_values().collect()).map(AnyTree::Increasing)
        }
        (Kind::Relaxed, None, Some(slots)) => {
            if slots.len() != size {
                return Err(TreeError::Parse(format!("{} slot entries for size {size}", slots.len())));
            }
            let mut table = vec![None; size];
            for (pos, entry) in slots.into_iter().enumerate() {
                if entry.id == 0 || entry.id > size {
                    return Err(TreeError::Parse(format!("slots[{pos}]: id {} outside 1..={size}", entry.id)));
                }
                if table[entry.id - 1].replace([entry.left, entry.right]).is_some() {
                    return Err(TreeError::Parse(format!("slots[{pos}]: duplicate id {}", entry.id)));
                }
                for slot in [entry.left, entry.right] {
                    if slot.target() > size {
                        return Err(TreeError::Parse(format!("slots[{pos}]: target {} outside 0..={size}", slot.target())));
                    }
                }
            }
            let slots: Vec<[Slot; 2]> = table.into_iter().map(|s| s.expect("all ids present")).collect();
            let pointers = slots.iter().flatten().filter(|s| s.is_ptr()).count();
            if pointers != size {
                return Err(TreeError::Parse(format!("{pointers} pointer edges for size {size}")));
            }
            Ok(AnyTree::Relaxed(RelaxedTree::from_slots(slots)))
        }
        (Kind::Increasing, _, _) => Err(TreeError::Parse("increasing document needs \"children\" and no \"slots\"".into())),
        (Kind::Relaxed, _, _) => Err(TreeError::Parse("relaxed document needs \"slots\" and no \"children\"".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Slot::{Edge, Ptr};

    #[test]
    fn leaf_only_document() {
        let t = RelaxedTree::leaf_only();
        let text = t.to_json();
        assert_eq!(text, r#"{"kind":"relaxed","size":0,"slots":[]}"#);
        assert_eq!(RelaxedTree::from_json(&text).unwrap(), t);
    }

    #[test]
    fn increasing_document_orders_labels_numerically() {
        let mut children = vec![vec![]; 12];
        children[0] = (1..12).collect();
        let t = PlaneIncreasingTree::from_children(children).unwrap();
        let text = t.to_json();
        assert!(text.contains(r#""9":[],"10":[],"11":[]"#), "{text}");
        assert_eq!(PlaneIncreasingTree::from_json(&text).unwrap(), t);
    }

    #[test]
    fn relaxed_document_shape() {
        let t = RelaxedTree::from_slots(vec![[Edge(0), Ptr(0)]]);
        assert_eq!(
            t.to_json(),
            r#"{"kind":"relaxed","size":1,"slots":[{"id":1,"left":{"edge":0},"right":{"ptr":0}}]}"#
        );
    }

    #[test]
    fn pointer_count_mismatch_is_rejected() {
        let text = r#"{"kind":"relaxed","size":1,"slots":[{"id":1,"left":{"edge":0},"right":{"edge":0}}]}"#;
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("pointer"), "{err}");
    }

    #[test]
    fn schema_errors_carry_positions() {
        let err = parse("{\"kind\":\"relaxed\",\n\"size\":\"x\"}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse(r#"{"kind":"increasing","size":1,"children":{"0":[1]}}"#).is_err());
        assert!(parse(r#"{"kind":"relaxed","size":1,"slots":[{"id":2,"left":{"edge":0},"right":{"ptr":0}}]}"#).is_err());
    }
}
