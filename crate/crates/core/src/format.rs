//! The line-oriented text format.
//!
//! ```text
//! # a disk
//! mbs disk
//! branch l1
//! sector e1 genus 0
//! prebranch e1 l1 1
//! ```
//!
//! A document holds any number of surfaces, each opened by an `mbs` header
//! (the name is optional). Lines before the first header belong to an
//! unnamed surface. For nonorientable sectors `genus` counts crosscaps.
//! Prebranches keep their line order within each sector.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::surface::{BranchId, MultibranchedSurface, Prebranch, Sector, SectorId};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

fn is_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Default)]
struct Block {
    headed: bool,
    name: Option<String>,
    branches: Vec<(BranchId, usize)>,
    sectors: Vec<(Sector, usize)>,
    prebranches: Vec<(SectorId, Prebranch, usize)>,
}

impl Block {
    fn is_blank(&self) -> bool {
        self.name.is_none() && self.branches.is_empty() && self.sectors.is_empty() && self.prebranches.is_empty()
    }

    fn finish(self) -> Result<MultibranchedSurface> {
        let semantic = |line, e| Error::Semantic {
            line,
            source: Box::new(e),
        };
        let mut branch_lines: HashMap<&BranchId, usize> = HashMap::new();
        for (b, line) in &self.branches {
            if branch_lines.insert(b, *line).is_some() {
                return Err(semantic(*line, Error::DuplicateBranch(b.clone())));
            }
        }
        let mut sector_pos: HashMap<SectorId, usize> = HashMap::new();
        for (k, (s, line)) in self.sectors.iter().enumerate() {
            if sector_pos.insert(s.id.clone(), k).is_some() {
                return Err(semantic(*line, Error::DuplicateSector(s.id.clone())));
            }
        }
        let mut sectors: Vec<Sector> = self.sectors.iter().map(|(s, _)| s.clone()).collect();
        for (e, c, line) in self.prebranches {
            let Some(&k) = sector_pos.get(&e) else {
                return Err(semantic(line, Error::UnknownSector(e)));
            };
            if !branch_lines.contains_key(&c.branch) {
                return Err(semantic(line, Error::UnknownBranch(c.branch)));
            }
            sectors[k].prebranches.push(c);
        }
        let branches = self.branches.into_iter().map(|(b, _)| b).collect();
        Ok(MultibranchedSurface::from_parts(self.name, branches, sectors))
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn expect_id<'a>(tokens: &[Token<'a>], i: usize, line: usize, what: &str, eol: usize) -> Result<&'a str> {
    match tokens.get(i) {
        Some(t) if is_id(t.text) => Ok(t.text),
        Some(t) => Err(syntax(line, t.column, format!("invalid {what} `{}`", t.text))),
        None => Err(syntax(line, eol, format!("missing {what}"))),
    }
}

fn expect_end(tokens: &[Token<'_>], i: usize, line: usize) -> Result<()> {
    match tokens.get(i) {
        Some(t) => Err(syntax(line, t.column, format!("unexpected `{}`", t.text))),
        None => Ok(()),
    }
}

/// Parse every surface in `text`. Surfaces come back as written, not
/// validated.
pub fn parse(text: &str) -> Result<Vec<MultibranchedSurface>> {
    let mut out = Vec::new();
    let mut block = Block::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        let Some(head) = tokens.first() else { continue };
        let eol = content.trim_end().len() + 1;
        match head.text {
            "mbs" => {
                let name = match tokens.get(1) {
                    None => None,
                    Some(_) => Some(expect_id(&tokens, 1, line, "surface name", eol)?.to_owned()),
                };
                expect_end(&tokens, 2, line)?;
                let prev = std::mem::take(&mut block);
                if prev.headed || !prev.is_blank() {
                    out.push(prev.finish()?);
                }
                block.headed = true;
                block.name = name;
            }
            "branch" => {
                let id = expect_id(&tokens, 1, line, "branch id", eol)?;
                expect_end(&tokens, 2, line)?;
                block.branches.push((id.into(), line));
            }
            "sector" => {
                let id = expect_id(&tokens, 1, line, "sector id", eol)?;
                match tokens.get(2) {
                    Some(t) if t.text == "genus" => {}
                    Some(t) => return Err(syntax(line, t.column, format!("expected `genus`, found `{}`", t.text))),
                    None => return Err(syntax(line, eol, "expected `genus`")),
                }
                let genus = match tokens.get(3) {
                    Some(t) => t
                        .text
                        .parse::<u32>()
                        .map_err(|_| syntax(line, t.column, format!("invalid genus `{}`", t.text)))?,
                    None => return Err(syntax(line, eol, "missing genus")),
                };
                let orientable = match tokens.get(4) {
                    None => true,
                    Some(t) if t.text == "nonorientable" => false,
                    Some(t) => return Err(syntax(line, t.column, format!("unexpected `{}`", t.text))),
                };
                expect_end(&tokens, 5, line)?;
                let sector = if orientable {
                    Sector::new(id, genus, Vec::new())
                } else {
                    Sector::nonorientable(id, genus, Vec::new())
                };
                block.sectors.push((sector, line));
            }
            "prebranch" => {
                let e = expect_id(&tokens, 1, line, "sector id", eol)?;
                let l = expect_id(&tokens, 2, line, "branch id", eol)?;
                let od = match tokens.get(3) {
                    Some(t) => t
                        .text
                        .parse::<i64>()
                        .map_err(|_| syntax(line, t.column, format!("invalid oriented degree `{}`", t.text)))?,
                    None => return Err(syntax(line, eol, "missing oriented degree")),
                };
                expect_end(&tokens, 4, line)?;
                if od == 0 {
                    return Err(Error::Semantic {
                        line,
                        source: Box::new(Error::ZeroDegree {
                            sector: e.into(),
                            branch: l.into(),
                        }),
                    });
                }
                block.prebranches.push((e.into(), Prebranch::new(l, od), line));
            }
            other => return Err(syntax(line, head.column, format!("unknown directive `{other}`"))),
        }
    }
    if block.headed || !block.is_blank() || out.is_empty() {
        out.push(block.finish()?);
    }
    Ok(out)
}

/// Parse a document that must contain exactly one surface.
pub fn parse_one(text: &str) -> Result<MultibranchedSurface> {
    let mut all = parse(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one surface")),
        n => Err(Error::InvalidArgument(format!("expected one surface, found {n}"))),
    }
}

pub fn serialize(x: &MultibranchedSurface) -> String {
    let mut out = String::new();
    match x.name() {
        Some(n) => writeln!(out, "mbs {n}"),
        None => writeln!(out, "mbs"),
    }
    .expect("string write");
    for b in x.branches() {
        writeln!(out, "branch {b}").expect("string write");
    }
    for s in x.sectors() {
        let tail = if s.orientable { "" } else { " nonorientable" };
        writeln!(out, "sector {} genus {}{tail}", s.id, s.genus).expect("string write");
        for c in &s.prebranches {
            writeln!(out, "prebranch {} {} {}", s.id, c.branch, c.oriented_degree).expect("string write");
        }
    }
    out
}

/// Serialize several surfaces into one document.
pub fn serialize_all(xs: &[MultibranchedSurface]) -> String {
    xs.iter().map(serialize).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{obstruction_example, one_sector, pants_example, seifert_example};

    #[test]
    fn parses_disk() {
        let x = parse_one("mbs disk\nbranch l1\nsector e1 genus 0\nprebranch e1 l1 1").unwrap();
        assert_eq!(x.name(), Some("disk"));
        assert_eq!(x.branches(), &[BranchId::from("l1")]);
        assert_eq!(x.sectors(), &[Sector::new("e1", 0, vec![Prebranch::new("l1", 1)])]);
    }

    #[test]
    fn zero_degree_is_semantic() {
        let err = parse("prebranch e1 l1 0").unwrap_err();
        assert_eq!(
            err,
            Error::Semantic {
                line: 1,
                source: Box::new(Error::ZeroDegree {
                    sector: "e1".into(),
                    branch: "l1".into()
                })
            }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse("branch"), Err(Error::Syntax { line: 1, column: 7, .. })));
        assert!(matches!(
            parse("\n  bogus x"),
            Err(Error::Syntax { line: 2, column: 3, .. })
        ));
        assert!(matches!(
            parse("sector e genus x"),
            Err(Error::Syntax {
                line: 1,
                column: 16,
                ..
            })
        ));
        assert!(matches!(
            parse("sector e genus 0 extra"),
            Err(Error::Syntax { column: 18, .. })
        ));
        assert!(matches!(parse("branch l-1"), Err(Error::Syntax { column: 8, .. })));
    }

    #[test]
    fn unknown_references_are_semantic() {
        let err = parse("branch l\nsector e genus 0\nprebranch e m 1").unwrap_err();
        assert!(matches!(err, Error::Semantic { line: 3, .. }));
        let err = parse("branch l\nprebranch e l 1").unwrap_err();
        assert!(matches!(err, Error::Semantic { line: 2, .. }));
    }

    #[test]
    fn forward_references_and_comments() {
        let text = "# header comment\nmbs a\nprebranch e l 2 # inline\nsector e genus 1\nbranch l\n";
        let x = parse_one(text).unwrap();
        assert_eq!(x.sectors()[0].genus, 1);
        assert_eq!(x.sectors()[0].prebranches[0].oriented_degree, 2);
    }

    #[test]
    fn multiple_surfaces() {
        let doc = serialize_all(&[pants_example(), obstruction_example()]);
        let xs = parse(&doc).unwrap();
        assert_eq!(xs, vec![pants_example(), obstruction_example()]);
        assert!(parse_one(&doc).is_err());
    }

    #[test]
    fn round_trips_exactly() {
        let mut cases = vec![
            pants_example(),
            obstruction_example(),
            seifert_example(&[2, 3]).unwrap(),
            one_sector(2, &[1, 4], Some(&[-1, 1])).unwrap(),
            MultibranchedSurface::empty(),
        ];
        cases.push(MultibranchedSurface::from_parts(
            None,
            vec!["l".into()],
            vec![Sector::nonorientable("m", 1, vec![Prebranch::new("l", 1)])],
        ));
        for x in cases {
            let text = serialize(&x);
            assert_eq!(parse_one(&text).unwrap(), x, "{text}");
            assert_eq!(serialize(&parse_one(&text).unwrap()), text);
        }
    }

    #[test]
    fn bare_headers_open_blocks() {
        let xs = parse("mbs\nmbs\nbranch l\n").unwrap();
        assert_eq!(xs.len(), 2);
        assert!(xs[0].is_empty());
        assert_eq!(xs[1].branches().len(), 1);
        let xs = parse("branch a\nmbs b\nbranch c\n").unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].name(), None);
    }

    #[test]
    fn empty_document() {
        assert_eq!(parse("").unwrap(), vec![MultibranchedSurface::empty()]);
        assert_eq!(parse("# nothing\n").unwrap(), vec![MultibranchedSurface::empty()]);
    }
}
