//! Line-oriented text format.
//!
//! ```text
//! ccd v1            # or `cc v1`; the version token is optional
//! degree 1          # optional, checked when present
//! wilson a b        # `legs a b` for a CC
//! vertex V x y z    # counterclockwise darts
//! edge a b
//! ```
//! Statements end at a newline or `;`, and `#` starts a comment.

use super::{assemble, Ccd, ChineseCharacter, DiagramError};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Ccd(Ccd),
    Cc(ChineseCharacter),
}

impl Diagram {
    pub fn degree(&self) -> usize {
        match self {
            Diagram::Ccd(d) => d.degree(),
            Diagram::Cc(c) => c.degree(),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Diagram::Ccd(d) => write_diagram("ccd", "wilson", d.legs(), d.trivalent(), &d.edges()),
            Diagram::Cc(c) => write_diagram("cc", "legs", c.legs(), c.trivalent(), &c.edges()),
        }
    }

    pub fn into_ccd(self) -> Result<Ccd, DiagramError> {
        match self {
            Diagram::Ccd(d) => Ok(d),
            Diagram::Cc(_) => Err(DiagramError::WrongKind { expected: "ccd", found: "cc" }),
        }
    }

    pub fn into_cc(self) -> Result<ChineseCharacter, DiagramError> {
        match self {
            Diagram::Cc(c) => Ok(c),
            Diagram::Ccd(_) => Err(DiagramError::WrongKind { expected: "cc", found: "ccd" }),
        }
    }
}

impl Ccd {
    pub fn serialize(&self) -> String {
        Diagram::Ccd(self.clone()).serialize()
    }
}

impl ChineseCharacter {
    pub fn serialize(&self) -> String {
        Diagram::Cc(self.clone()).serialize()
    }
}

fn write_diagram(header: &str, legs_kw: &str, legs: usize, t: usize, edges: &[(u32, u32)]) -> String {
    let mut s = format!("{header} v1\n{legs_kw}");
    for i in 0..legs {
        write!(s, " d{i}").unwrap();
    }
    s.push('\n');
    for k in 0..t {
        let b = legs + 3 * k;
        writeln!(s, "vertex v{k} d{} d{} d{}", b, b + 1, b + 2).unwrap();
    }
    for &(a, b) in edges {
        writeln!(s, "edge d{a} d{b}").unwrap();
    }
    s
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn syntax(t: &Token, msg: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { line: t.line, col: t.col, msg: msg.into() }
}

fn statements(input: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap();
        let mut offset = 0;
        for part in line.split(';') {
            let mut toks = Vec::new();
            let mut pos = 0;
            for word in part.split_whitespace() {
                let at = part[pos..].find(word).unwrap() + pos;
                pos = at + word.len();
                toks.push(Token { text: word, line: ln + 1, col: offset + at + 1 });
            }
            if !toks.is_empty() {
                out.push(toks);
            }
            offset += part.len() + 1;
        }
    }
    out
}

fn declare<'a>(t: &Token<'a>, ids: &mut HashMap<&'a str, u32>, names: &mut Vec<&'a str>) -> Result<u32, DiagramError> {
    if !is_name(t.text) {
        return Err(syntax(t, format!("invalid dart name `{}`", t.text)));
    }
    if ids.contains_key(t.text) {
        return Err(DiagramError::DuplicateDart(t.text.to_string()));
    }
    let id = names.len() as u32;
    ids.insert(t.text, id);
    names.push(t.text);
    Ok(id)
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse a CCD or CC from the text format.
pub fn parse_diagram(input: &str) -> Result<Diagram, DiagramError> {
    let stmts = statements(input);
    let Some(first) = stmts.first() else {
        return Err(DiagramError::Syntax { line: 1, col: 1, msg: "empty input".into() });
    };
    let is_ccd = match first[0].text {
        "ccd" => true,
        "cc" => false,
        _ => return Err(syntax(&first[0], "expected header `ccd` or `cc`")),
    };
    match first.len() {
        1 => {}
        2 if first[1].text == "v1" => {}
        _ => return Err(syntax(&first[first.len() - 1], "unsupported header")),
    }
    let legs_kw = if is_ccd { "wilson" } else { "legs" };

    let mut ids: HashMap<&str, u32> = HashMap::new();
    let mut names: Vec<&str> = Vec::new();
    let mut legs: Option<Vec<u32>> = None;
    let mut vertices: Vec<[u32; 3]> = Vec::new();
    let mut vertex_names: HashMap<&str, ()> = HashMap::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_toks: Vec<(&Token, &Token)> = Vec::new();
    let mut degree: Option<usize> = None;

    for st in &stmts[1..] {
        let kw = &st[0];
        match kw.text {
            k if k == legs_kw => {
                if legs.is_some() {
                    return Err(syntax(kw, format!("duplicate `{legs_kw}` statement")));
                }
                let mut v = Vec::new();
                for t in &st[1..] {
                    v.push(declare(t, &mut ids, &mut names)?);
                }
                legs = Some(v);
            }
            "vertex" => {
                if st.len() != 5 {
                    return Err(syntax(kw, "expected `vertex NAME a b c`"));
                }
                if !is_name(st[1].text) || vertex_names.insert(st[1].text, ()).is_some() {
                    return Err(syntax(&st[1], format!("bad or repeated vertex name `{}`", st[1].text)));
                }
                let mut tri = [0u32; 3];
                for (j, t) in st[2..].iter().enumerate() {
                    tri[j] = declare(t, &mut ids, &mut names)?;
                }
                vertices.push(tri);
            }
            "edge" => {
                if st.len() != 3 {
                    return Err(syntax(kw, "expected `edge a b`"));
                }
                edge_toks.push((&st[1], &st[2]));
            }
            "degree" => {
                if st.len() != 2 || degree.is_some() {
                    return Err(syntax(kw, "expected a single `degree N`"));
                }
                degree = Some(st[1].text.parse().map_err(|_| syntax(&st[1], "degree must be a non-negative integer"))?);
            }
            other => return Err(syntax(kw, format!("unknown statement `{other}`"))),
        }
    }
    let legs = legs.unwrap_or_default();

    let mut paired = vec![false; names.len()];
    for (a, b) in edge_toks {
        let mut pair = [0u32; 2];
        for (slot, t) in [a, b].into_iter().enumerate() {
            let id = *ids.get(t.text).ok_or_else(|| DiagramError::UndeclaredDart(t.text.to_string()))?;
            if paired[id as usize] {
                return Err(DiagramError::MultiplyPaired(t.text.to_string()));
            }
            pair[slot] = id;
        }
        if pair[0] == pair[1] {
            return Err(DiagramError::SelfPaired(a.text.to_string()));
        }
        paired[pair[0] as usize] = true;
        paired[pair[1] as usize] = true;
        edges.push((pair[0], pair[1]));
    }
    if let Some(i) = paired.iter().position(|&p| !p) {
        return Err(DiagramError::UnpairedDart(names[i].to_string()));
    }
    let sk = assemble(&legs, &vertices, &edges)?;
    if let Some(declared) = degree {
        if declared != sk.degree() {
            return Err(DiagramError::DegreeMismatch { declared, actual: sk.degree() });
        }
    }
    Ok(if is_ccd { Diagram::Ccd(Ccd { sk }) } else { Diagram::Cc(ChineseCharacter { sk }) })
}
