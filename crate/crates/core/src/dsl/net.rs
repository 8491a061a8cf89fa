use super::ast::Definition;
use super::eval::Env;
use super::parser::{parse_definition, Cursor};
use super::{DslError, ParseError};
use crate::analysis::{FuncSample, NetSpec, NodeValue};
use crate::error::GermError;
use crate::germ::Germ;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeSource {
    Germ(String),
    Sample(String),
}

/// A parsed net file; names are resolved by [`NetFile::build`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NetFile {
    /// `germs = "path"`, relative to the net file.
    pub include: Option<String>,
    pub definitions: Vec<Definition>,
    pub edges: Vec<(String, String)>,
    pub nodes: Vec<(String, NodeSource, usize)>,
    pub target: Option<(String, usize)>,
    pub tests: Vec<(String, usize)>,
}

fn dup(line: usize, what: &str) -> ParseError {
    ParseError::new(line, 1, format!("a single `{what}` line"))
}

/// Lines: `poset: a < b, b < c < d`, `node n = germ`, `node n = sample
/// "file.csv"`, `target = name`, `tests = p, q`, `germs = "file.germ"`, and
/// inline `name: expr` definitions.
pub fn parse_net_file(text: &str) -> Result<NetFile, ParseError> {
    let mut net = NetFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim_start();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut c = Cursor::new(raw, line)?;
        if c.is_ident("poset") {
            c.keyword("poset")?;
            c.sym(':')?;
            loop {
                let (mut a, _, _) = c.name()?;
                c.sym('<')?;
                loop {
                    let (b, _, _) = c.name()?;
                    net.edges.push((a, b.clone()));
                    a = b;
                    if !c.eat_sym('<') {
                        break;
                    }
                }
                if !c.eat_sym(',') {
                    break;
                }
            }
            c.end()?;
        } else if c.is_ident("node") {
            c.keyword("node")?;
            let (n, _, _) = c.name()?;
            c.sym('=')?;
            let src = if c.is_ident("sample") {
                c.keyword("sample")?;
                NodeSource::Sample(c.string()?)
            } else {
                NodeSource::Germ(c.ident("a germ name")?.0)
            };
            c.end()?;
            net.nodes.push((n, src, line));
        } else if c.is_ident("target") {
            c.keyword("target")?;
            c.sym('=')?;
            let (n, _, _) = c.ident("a germ name")?;
            c.end()?;
            if net.target.replace((n, line)).is_some() {
                return Err(dup(line, "target"));
            }
        } else if c.is_ident("tests") {
            c.keyword("tests")?;
            c.sym('=')?;
            loop {
                net.tests.push((c.name()?.0, line));
                if !c.eat_sym(',') {
                    break;
                }
            }
            c.end()?;
        } else if c.is_ident("germs") {
            c.keyword("germs")?;
            c.sym('=')?;
            let p = c.string()?;
            c.end()?;
            if net.include.replace(p).is_some() {
                return Err(dup(line, "germs"));
            }
        } else {
            net.definitions.push(parse_definition(raw, line)?);
        }
    }
    if net.nodes.is_empty() {
        return Err(ParseError::new(text.lines().count().max(1), 1, "at least one `node` line"));
    }
    if net.tests.is_empty() {
        return Err(ParseError::new(text.lines().count().max(1), 1, "a `tests` line"));
    }
    Ok(net)
}

impl NetFile {
    /// Resolves names against `env` (which should already hold the included
    /// and inline definitions) and loads sample nodes through `load`.
    pub fn build(
        &self,
        env: &mut Env,
        mut load: impl FnMut(&str) -> Result<FuncSample, DslError>,
    ) -> Result<NetSpec, DslError> {
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (n, src, _) in &self.nodes {
            let v = match src {
                NodeSource::Germ(g) => NodeValue::Germ(env.get(g)?),
                NodeSource::Sample(p) => NodeValue::Sample(load(p)?),
            };
            nodes.push((n.clone(), v));
        }
        let target = match &self.target {
            None => Germ::Zero,
            Some((t, _)) => env.get(t)?,
        };
        let mut battery = Vec::with_capacity(self.tests.len());
        for (t, line) in &self.tests {
            match env.get(t)? {
                Germ::Pl(p) => battery.push((t.clone(), p)),
                _ => {
                    return Err(DslError::Semantic {
                        name: t.clone(),
                        line: *line,
                        error: GermError::Invalid("battery tests must be PL germs".into()),
                    })
                }
            }
        }
        Ok(NetSpec::new(nodes, &self.edges, NodeValue::Germ(target), battery)?)
    }
}
