//! A minimal recursive-descent validator for the DOT subset:
//!
//! ```text
//! graph     := "digraph" id? "{" stmt_list "}"
//! stmt_list := (stmt ";"?)*
//! stmt      := ("graph" | "node" | "edge") attr_list
//!            | "subgraph" id? "{" stmt_list "}"
//!            | id "=" id
//!            | id ("->" id)* attr_list?
//! attr_list := ("[" (id "=" id (","|";")?)* "]")+
//! ```
//!
//! Identifiers are alphanumeric words, numerals, or double-quoted strings
//! with backslash escapes. Edges must reference declared nodes.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Arrow,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '{' => (out.push(Tok::LBrace), i += 1).1,
            '}' => (out.push(Tok::RBrace), i += 1).1,
            '[' => (out.push(Tok::LBracket), i += 1).1,
            ']' => (out.push(Tok::RBracket), i += 1).1,
            '=' => (out.push(Tok::Eq), i += 1).1,
            ';' => (out.push(Tok::Semi), i += 1).1,
            ',' => (out.push(Tok::Comma), i += 1).1,
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::Arrow);
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') => {
                            let next = chars.get(i + 1).ok_or("dangling escape")?;
                            s.push(*next);
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(s));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character {other:?} at {i}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    declared: BTreeSet<String>,
    edges: Vec<(String, String)>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, got {got:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            got => Err(format!("expected identifier, got {got:?}")),
        }
    }

    fn attr_list(&mut self) -> Result<(), String> {
        if self.peek() != Some(&Tok::LBracket) {
            return Err("expected [".into());
        }
        while self.peek() == Some(&Tok::LBracket) {
            self.next();
            while self.peek() != Some(&Tok::RBracket) {
                self.id()?;
                self.expect(Tok::Eq)?;
                self.id()?;
                if matches!(self.peek(), Some(Tok::Comma | Tok::Semi)) {
                    self.next();
                }
            }
            self.expect(Tok::RBracket)?;
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while let Some(t) = self.peek() {
            if *t == Tok::RBrace {
                return Ok(());
            }
            self.stmt()?;
            if self.peek() == Some(&Tok::Semi) {
                self.next();
            }
        }
        Err("missing }".into())
    }

    fn stmt(&mut self) -> Result<(), String> {
        let first = self.id()?;
        match first.as_str() {
            "graph" | "node" | "edge" => return self.attr_list(),
            "subgraph" => {
                if matches!(self.peek(), Some(Tok::Id(_))) {
                    self.next();
                }
                self.expect(Tok::LBrace)?;
                self.stmt_list()?;
                return self.expect(Tok::RBrace);
            }
            _ => {}
        }
        if self.peek() == Some(&Tok::Eq) {
            self.next();
            self.id()?;
            return Ok(());
        }
        let mut prev = first;
        let mut chain = false;
        while self.peek() == Some(&Tok::Arrow) {
            self.next();
            let next = self.id()?;
            self.edges.push((prev, next.clone()));
            prev = next;
            chain = true;
        }
        if !chain {
            self.declared.insert(prev);
        }
        if self.peek() == Some(&Tok::LBracket) {
            self.attr_list()?;
        }
        Ok(())
    }
}

/// Parsed summary of a valid DOT digraph.
#[derive(Debug)]
pub struct DotGraph {
    pub nodes: BTreeSet<String>,
    pub edges: Vec<(String, String)>,
}

pub fn validate(src: &str) -> Result<DotGraph, String> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        declared: BTreeSet::new(),
        edges: Vec::new(),
    };
    if p.id()? != "digraph" {
        return Err("expected digraph".into());
    }
    if matches!(p.peek(), Some(Tok::Id(_))) {
        p.next();
    }
    p.expect(Tok::LBrace)?;
    p.stmt_list()?;
    p.expect(Tok::RBrace)?;
    if p.pos != p.toks.len() {
        return Err("trailing tokens".into());
    }
    for (a, b) in &p.edges {
        for end in [a, b] {
            if !p.declared.contains(end) {
                return Err(format!("edge endpoint {end} is not declared"));
            }
        }
    }
    Ok(DotGraph {
        nodes: p.declared,
        edges: p.edges,
    })
}

#[test]
fn validator_rejects_garbage() {
    assert!(validate("digraph { a -> }").is_err());
    assert!(validate("graph { a }").is_err());
    assert!(validate("digraph { a [label=\"x\"]; b; a -> b; }").is_ok());
    assert!(validate("digraph { a -> b; }").is_err());
    assert!(validate("digraph \"g\" { subgraph cluster_0 { label=\"q\"; a; } }").is_ok());
    assert!(validate("digraph { a; ").is_err());
}
