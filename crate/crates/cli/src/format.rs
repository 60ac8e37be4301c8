//! Line-oriented text formats for fans and arrangements, with
//! line-numbered diagnostics. `#` starts a comment anywhere on a line;
//! blank lines are ignored.

use anyhow::{anyhow, bail, Result};
use std::str::FromStr;
use torarr_core::arrangement::{Arrangement, Layer};
use torarr_core::fan::Fan;
use torarr_core::lattice::{Int, Rat};

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("").trim();
                if body.is_empty() {
                    None
                } else {
                    Some((i + 1, body.split_whitespace().collect()))
                }
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }
}

fn parse_int(lineno: usize, tok: &str) -> Result<Int> {
    Int::from_str(tok).map_err(|_| anyhow!("line {lineno}: expected an integer, got `{tok}`"))
}

fn parse_dim(lines: &mut Lines) -> Result<usize> {
    let (lineno, toks) = lines
        .next()
        .ok_or_else(|| anyhow!("empty input: expected `dim <n>`"))?;
    if toks.len() != 2 || toks[0] != "dim" {
        bail!("line {lineno}: expected `dim <n>`");
    }
    toks[1]
        .parse::<usize>()
        .map_err(|_| anyhow!("line {lineno}: expected a nonnegative dimension, got `{}`", toks[1]))
}

/// Fan format: `dim n`; `rays` with one integer vector per line; `cones`
/// with one whitespace-separated list of 0-based ray indices per line.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let mut lines = Lines::new(text);
    let dim = parse_dim(&mut lines)?;
    match lines.next() {
        Some((_, toks)) if toks == ["rays"] => {}
        Some((lineno, _)) => bail!("line {lineno}: expected `rays`"),
        None => bail!("missing `rays` section"),
    }
    let mut rays: Vec<Vec<Int>> = Vec::new();
    loop {
        match lines.peek() {
            Some((_, toks)) if toks == &["cones"] => break,
            Some(_) => {
                let (lineno, toks) = lines.next().unwrap();
                if toks.len() != dim {
                    bail!("line {lineno}: expected {dim} integer coordinates for a ray");
                }
                let ray = toks
                    .iter()
                    .map(|t| parse_int(lineno, t))
                    .collect::<Result<Vec<Int>>>()?;
                rays.push(ray);
            }
            None => bail!("missing `cones` section"),
        }
    }
    lines.next(); // the `cones` keyword
    let mut cones: Vec<Vec<usize>> = Vec::new();
    while let Some((lineno, toks)) = lines.next() {
        let cone = toks
            .iter()
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    anyhow!("line {lineno}: expected a 0-based ray index, got `{t}`")
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        for &i in &cone {
            if i >= rays.len() {
                bail!("line {lineno}: ray index {i} out of range ({} rays)", rays.len());
            }
        }
        cones.push(cone);
    }
    Fan::new(dim, rays, cones).map_err(|e| anyhow!("invalid fan: {e}"))
}

pub fn fan_to_text(fan: &Fan) -> String {
    let mut out = format!("dim {}\nrays\n", fan.dim());
    for ray in fan.rays() {
        let coords: Vec<String> = ray.iter().map(|x| x.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out.push_str("cones\n");
    for cone in fan.max_cones() {
        let idx: Vec<String> = cone.iter().map(|i| i.to_string()).collect();
        out.push_str(&idx.join(" "));
        out.push('\n');
    }
    out
}

fn parse_rat(lineno: usize, tok: &str) -> Result<Rat> {
    let parse_part = |s: &str| {
        Int::from_str(s).map_err(|_| anyhow!("line {lineno}: expected `p/q`, got `{tok}`"))
    };
    match tok.split_once('/') {
        Some((p, q)) => {
            let num = parse_part(p)?;
            let den = parse_part(q)?;
            if den == Int::from(0) {
                bail!("line {lineno}: zero denominator in `{tok}`");
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(parse_part(tok)?)),
    }
}

/// Arrangement format: `dim n`; then `layer` blocks, each holding one
/// `char <int …>` line per lattice basis row followed by one `phase p/q`
/// line per row.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = Lines::new(text);
    let dim = parse_dim(&mut lines)?;
    let mut layers: Vec<Layer> = Vec::new();
    let mut block = 0usize;
    while let Some((lineno, toks)) = lines.next() {
        if toks != ["layer"] {
            bail!("line {lineno}: expected `layer`");
        }
        block += 1;
        let block_line = lineno;
        let mut chars: Vec<Vec<Int>> = Vec::new();
        let mut phases: Vec<Rat> = Vec::new();
        loop {
            match lines.peek() {
                Some((_, toks)) if toks == &["layer"] => break,
                None => break,
                Some(_) => {}
            }
            let (lineno, toks) = lines.next().unwrap();
            match toks[0] {
                "char" => {
                    if !phases.is_empty() {
                        bail!("line {lineno}: `char` rows must precede `phase` rows in a layer block");
                    }
                    if toks.len() != dim + 1 {
                        bail!("line {lineno}: expected {dim} integer coordinates after `char`");
                    }
                    chars.push(
                        toks[1..]
                            .iter()
                            .map(|t| parse_int(lineno, t))
                            .collect::<Result<Vec<Int>>>()?,
                    );
                }
                "phase" => {
                    if toks.len() != 2 {
                        bail!("line {lineno}: expected `phase p/q`");
                    }
                    phases.push(parse_rat(lineno, toks[1])?);
                }
                other => bail!("line {lineno}: expected `char`, `phase` or `layer`, got `{other}`"),
            }
        }
        if chars.len() != phases.len() {
            bail!(
                "layer block {block} (line {block_line}): {} char rows but {} phase rows",
                chars.len(),
                phases.len()
            );
        }
        let layer = Layer::new(dim, &chars, &phases)
            .map_err(|e| anyhow!("layer block {block} (line {block_line}): {e}"))?;
        layers.push(layer);
    }
    Arrangement::new(dim, layers).map_err(|e| anyhow!("invalid arrangement: {e}"))
}

pub fn arrangement_to_text(arr: &Arrangement) -> String {
    let mut out = format!("dim {}\n", arr.dim());
    for layer in arr.layers() {
        out.push_str("layer\n");
        let basis = layer.gamma().basis();
        for r in 0..basis.rows() {
            let coords: Vec<String> = basis.row(r).iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("char {}\n", coords.join(" ")));
        }
        for p in layer.phase() {
            out.push_str(&format!("phase {}/{}\n", p.numer(), p.denom()));
        }
    }
    out
}

/// Parses a whitespace-separated integer vector, as passed on the command
/// line for characters and subdivision points.
pub fn parse_int_vector(s: &str) -> Result<Vec<Int>> {
    s.split_whitespace()
        .map(|t| Int::from_str(t).map_err(|_| anyhow!("expected an integer, got `{t}`")))
        .collect()
}
