use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LabeledGraph, PreGraph, StallingsGraph};
use crate::error::{Error, Invariant, Result};
use crate::words::{Alphabet, Letter};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    r: usize,
    n: usize,
    base: usize,
    edges: BTreeMap<String, Vec<[usize; 2]>>,
}

impl StallingsGraph {
    /// Canonical one-line JSON, vertices 1-based.
    pub fn to_json(&self) -> String {
        let g = self.graph();
        let edges = g
            .injections()
            .iter()
            .enumerate()
            .map(|(a, f)| {
                let pairs = f.pairs().map(|(x, y)| [x + 1, y + 1]).collect();
                (Letter::positive(a).to_char().to_string(), pairs)
            })
            .collect();
        let file = GraphFile {
            r: g.alphabet().rank(),
            n: g.vertex_count(),
            base: 1,
            edges,
        };
        serde_json::to_string(&file).expect("graph file serializes")
    }

    /// Parses the JSON form, rejecting graphs that are not admissible at
    /// vertex 1.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let alphabet = Alphabet::new(file.r)?;
        if file.base != 1 {
            return Err(Error::Inadmissible {
                invariant: Invariant::BaseVertex,
                detail: format!("base is {}", file.base),
            });
        }
        if file.n == 0 {
            return Err(Error::Inadmissible {
                invariant: Invariant::BaseVertex,
                detail: "graph has no vertex".into(),
            });
        }
        let mut pre = PreGraph::new(alphabet, file.n);
        for (name, pairs) in &file.edges {
            let letter = single_char(name)
                .and_then(Letter::from_char)
                .filter(|l| !l.is_inverse() && alphabet.contains(*l))
                .ok_or_else(|| {
                    Error::MalformedInput(format!("unknown edge label {name:?} for r = {}", file.r))
                })?;
            for &[x, y] in pairs {
                if x == 0 || y == 0 {
                    return Err(Error::MalformedInput(format!(
                        "vertex 0 in pair [{x}, {y}]; vertices are 1-based"
                    )));
                }
                pre.add_edge(x - 1, letter.index(), y - 1)?;
            }
        }
        if let Some((invariant, detail)) = pre.admissibility_violation(0) {
            return Err(Error::Inadmissible { invariant, detail });
        }
        let mut g = LabeledGraph::new(alphabet, file.n);
        for &(x, a, y) in pre.edges() {
            g.add_edge(x, a, y)?;
        }
        StallingsGraph::from_graph(g)
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    let c = chars.next()?;
    chars.next().is_none().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn fold(gens: &[&str]) -> StallingsGraph {
        let a = Alphabet::new(2).unwrap();
        let words: Vec<Word> = gens.iter().map(|g| Word::parse(g, a).unwrap()).collect();
        StallingsGraph::fold(&words, a).unwrap()
    }

    #[test]
    fn canonical_text() {
        assert_eq!(
            fold(&["a"]).to_json(),
            r#"{"r":2,"n":1,"base":1,"edges":{"a":[[1,1]],"b":[]}}"#
        );
        assert_eq!(
            fold(&["ab", "ba"]).to_json(),
            r#"{"r":2,"n":3,"base":1,"edges":{"a":[[1,2],[3,1]],"b":[[1,3],[2,1]]}}"#
        );
    }

    #[test]
    fn round_trip() {
        for gens in [&["ab", "ba"][..], &[], &["aabAB", "bbb"]] {
            let g = fold(gens);
            assert_eq!(StallingsGraph::from_json(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let leaf = r#"{"r":2,"n":2,"base":1,"edges":{"a":[[1,2]],"b":[]}}"#;
        let err = StallingsGraph::from_json(leaf).unwrap_err();
        assert!(matches!(err, Error::Inadmissible { invariant: Invariant::Trim, .. }));
        assert!(err.to_string().contains("trim"));

        let nondet = r#"{"r":2,"n":2,"base":1,"edges":{"a":[[1,2],[1,1]],"b":[[2,2]]}}"#;
        assert!(matches!(
            StallingsGraph::from_json(nondet),
            Err(Error::Inadmissible { invariant: Invariant::Determinism, .. })
        ));
        let split = r#"{"r":2,"n":2,"base":1,"edges":{"a":[[1,1]],"b":[[2,2]]}}"#;
        assert!(matches!(
            StallingsGraph::from_json(split),
            Err(Error::Inadmissible { invariant: Invariant::Connectivity, .. })
        ));
        let base = r#"{"r":2,"n":1,"base":2,"edges":{}}"#;
        assert!(StallingsGraph::from_json(base).is_err());
        let label = r#"{"r":2,"n":1,"base":1,"edges":{"c":[[1,1]]}}"#;
        assert!(matches!(StallingsGraph::from_json(label), Err(Error::MalformedInput(_))));
        assert!(matches!(StallingsGraph::from_json("{"), Err(Error::GraphFormat(_))));
    }
}
