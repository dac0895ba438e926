//! Gauss code text format.
//!
//! ```text
//! code      = component { ";" component }
//! component = "○" | item { item }
//! item      = [ "(" ] ( "o" | "u" ) label ( "+" | "-" | "*" ) [ ")" ]
//! label     = ( letter | digit | "_" ) { letter | digit | "_" }
//! ```
//!
//! `*` marks a node; its `o` pass is the over strand of the positive
//! resolution. An empty input is a single crossingless loop.

use std::collections::HashMap;

use super::{Crossing, Diagram, DiagramError, Pass, Sign, Strand};

struct Item {
    strand: Strand,
    label: String,
    kind: Crossing,
}

fn parse_component(text: &str, base: usize) -> Result<Vec<Item>, DiagramError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut items = Vec::new();
    let mut k = 0;
    let tok = |k: usize| -> DiagramError {
        let (off, ch) = chars[k];
        DiagramError::Token { token: ch.to_string(), offset: base + off }
    };
    while k < chars.len() {
        let (_, ch) = chars[k];
        if ch.is_whitespace() || ch == '(' || ch == ')' {
            k += 1;
            continue;
        }
        let strand = match ch {
            'o' | 'O' => Strand::Over,
            'u' | 'U' => Strand::Under,
            _ => return Err(tok(k)),
        };
        k += 1;
        let start = k;
        while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
            k += 1;
        }
        if k == start {
            return Err(if k < chars.len() {
                tok(k)
            } else {
                DiagramError::Token { token: "end of input".into(), offset: base + text.len() }
            });
        }
        let label: String = chars[start..k].iter().map(|c| c.1).collect();
        if k >= chars.len() {
            return Err(DiagramError::Token { token: "end of input".into(), offset: base + text.len() });
        }
        let kind = match chars[k].1 {
            '+' => Crossing::Classical(Sign::Pos),
            '-' | '−' => Crossing::Classical(Sign::Neg),
            '*' => Crossing::Node,
            _ => return Err(tok(k)),
        };
        k += 1;
        items.push(Item { strand, label, kind });
    }
    Ok(items)
}

/// Parses a Gauss code into a validated diagram.
pub fn parse_gauss(text: &str) -> Result<Diagram, DiagramError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Diagram::unknot());
    }
    let mut comps = Vec::new();
    let mut offset = 0;
    for (idx, part) in text.split(';').enumerate() {
        let t = part.trim();
        if t == "○" {
            comps.push(Vec::new());
        } else if t.is_empty() {
            return Err(DiagramError::EmptyComponent(idx));
        } else {
            comps.push(parse_component(part, offset)?);
        }
        offset += part.len() + 1;
    }
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut kinds: Vec<Crossing> = Vec::new();
    let mut counts: Vec<[usize; 2]> = Vec::new();
    let mut components = Vec::new();
    for comp in comps {
        let mut passes = Vec::new();
        for it in comp {
            let id = *ids.entry(it.label.clone()).or_insert_with(|| {
                labels.push(it.label.clone());
                kinds.push(it.kind);
                counts.push([0, 0]);
                labels.len() - 1
            });
            if kinds[id] != it.kind {
                return Err(DiagramError::InconsistentSign { label: it.label });
            }
            counts[id][it.strand as usize] += 1;
            passes.push(Pass { crossing: id, strand: it.strand });
        }
        components.push(passes);
    }
    for (id, c) in counts.iter().enumerate() {
        let label = labels[id].clone();
        match *c {
            [1, 1] => {}
            [n, 0] if n > 0 => {
                return Err(if n == 2 {
                    DiagramError::MissingUnder { label }
                } else {
                    DiagramError::LabelCount { label, count: n }
                })
            }
            [0, n] if n > 0 => {
                return Err(if n == 2 {
                    DiagramError::MissingOver { label }
                } else {
                    DiagramError::LabelCount { label, count: n }
                })
            }
            [a, b] => return Err(DiagramError::LabelCount { label, count: a + b }),
        }
    }
    Diagram::new(components, kinds)
}

pub(super) fn serialize(d: &Diagram) -> String {
    let comps: Vec<String> = d
        .components()
        .iter()
        .map(|comp| {
            if comp.is_empty() {
                return "○".to_string();
            }
            comp.iter()
                .map(|p| {
                    let s = match p.strand {
                        Strand::Over => 'o',
                        Strand::Under => 'u',
                    };
                    let k = match d.crossings()[p.crossing] {
                        Crossing::Classical(Sign::Pos) => '+',
                        Crossing::Classical(Sign::Neg) => '-',
                        Crossing::Node => '*',
                    };
                    format!("({}{}{})", s, p.crossing + 1, k)
                })
                .collect()
        })
        .collect();
    comps.join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let t = parse_gauss("(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)").unwrap();
        assert_eq!(t.num_crossings(), 3);
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.to_gauss(), "(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)");
    }

    #[test]
    fn parses_without_parentheses_and_letters() {
        let d = parse_gauss("oa- ub+ uc- ob+ oc- ua-").unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.writhe(), -1);
    }

    #[test]
    fn empty_and_loops() {
        assert_eq!(parse_gauss("").unwrap(), Diagram::unknot());
        assert_eq!(parse_gauss("○;○").unwrap(), Diagram::unlink(2));
        assert!(matches!(parse_gauss("(o1+)(u1+);"), Err(DiagramError::EmptyComponent(1))));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(parse_gauss("(o1+)(o1+)"), Err(DiagramError::MissingUnder { .. })));
        assert!(matches!(parse_gauss("(o1+)(u1-)"), Err(DiagramError::InconsistentSign { .. })));
        assert!(matches!(parse_gauss("(o1+)"), Err(DiagramError::LabelCount { .. })));
        match parse_gauss("(o1+)(x1+)") {
            Err(DiagramError::Token { token, .. }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
    }
}
