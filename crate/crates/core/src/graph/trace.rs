use serde::{Deserialize, Serialize};

use super::{EditKind, Graph, GraphEdit, GraphError};

/// Serialized form of one edit: `{op, args, tag}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub op: String,
    pub args: Vec<usize>,
    pub tag: String,
}

impl From<&GraphEdit> for TraceStep {
    fn from(e: &GraphEdit) -> Self {
        let (op, args) = match &e.kind {
            EditKind::DeleteEdge(u, v) => ("delete_edge", vec![*u, *v]),
            EditKind::SubdivideEdge { u, v, new_id } => ("subdivide_edge", vec![*u, *v, *new_id]),
            EditKind::DeleteVertices(set) => ("delete_vertices", set.clone()),
            EditKind::AddEdge(u, v) => ("add_edge", vec![*u, *v]),
        };
        TraceStep {
            op: op.to_string(),
            args,
            tag: e.tag.clone(),
        }
    }
}

impl TryFrom<&TraceStep> for GraphEdit {
    type Error = GraphError;

    fn try_from(s: &TraceStep) -> Result<Self, GraphError> {
        let bad = || GraphError::EditPrecondition {
            edit: format!("{}{:?}", s.op, s.args),
            reason: "malformed trace step".into(),
        };
        let kind = match (s.op.as_str(), s.args.as_slice()) {
            ("delete_edge", &[u, v]) => EditKind::DeleteEdge(u, v),
            ("add_edge", &[u, v]) => EditKind::AddEdge(u, v),
            ("subdivide_edge", &[u, v, new_id]) => EditKind::SubdivideEdge { u, v, new_id },
            ("delete_vertices", set) => EditKind::DeleteVertices(set.to_vec()),
            _ => return Err(bad()),
        };
        Ok(GraphEdit::new(kind, s.tag.clone()))
    }
}

/// Ordered, replayable list of edits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformTrace {
    pub edits: Vec<GraphEdit>,
}

impl TransformTrace {
    pub fn push(&mut self, edit: GraphEdit) {
        self.edits.push(edit);
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn extend(&mut self, other: &TransformTrace) {
        self.edits.extend(other.edits.iter().cloned());
    }

    /// Re-applies every edit to `start`.
    pub fn replay(&self, start: &Graph) -> Result<Graph, GraphError> {
        let mut g = start.clone();
        for e in &self.edits {
            g = g.apply_edit(e)?.graph;
        }
        Ok(g)
    }

    pub fn steps(&self) -> Vec<TraceStep> {
        self.edits.iter().map(TraceStep::from).collect()
    }

    pub fn from_steps(steps: &[TraceStep]) -> Result<Self, GraphError> {
        let edits = steps.iter().map(GraphEdit::try_from).collect::<Result<_, _>>()?;
        Ok(TransformTrace { edits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_round_trip_and_replay() {
        let p2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut t = TransformTrace::default();
        t.push(GraphEdit::new(EditKind::SubdivideEdge { u: 0, v: 1, new_id: 2 }, "sub"));
        t.push(GraphEdit::new(EditKind::DeleteEdge(0, 2), "del"));
        t.push(GraphEdit::new(EditKind::AddEdge(0, 1), "add"));
        t.push(GraphEdit::new(EditKind::DeleteVertices(vec![2]), "drop"));
        let back = TransformTrace::from_steps(&t.steps()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.replay(&p2).unwrap(), p2);
        let json = serde_json::to_string(&t.steps()[0]).unwrap();
        assert_eq!(json, r#"{"op":"subdivide_edge","args":[0,1,2],"tag":"sub"}"#);
    }
}
