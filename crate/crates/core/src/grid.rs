//! Parameter grids such as `p=1..8,q=1..p,r=1..q,n=5,10,20`.
//!
//! A grid is a `;`-separated union of products. Each product lists variables
//! in nesting order; a variable takes integers and inclusive ranges whose
//! bounds are literals or earlier variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Int(i64),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Item {
    Single(Term),
    Range(Term, Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Product {
    vars: Vec<(String, Vec<Item>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    products: Vec<Product>,
}

pub type Cell = BTreeMap<String, i64>;

fn parse_term(s: &str, known: &[String]) -> Result<Term> {
    let s = s.trim();
    if let Ok(v) = s.parse::<i64>() {
        return Ok(Term::Int(v));
    }
    if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(Error::Grid(format!("bad value `{s}`")));
    }
    if !known.iter().any(|k| k == s) {
        return Err(Error::Grid(format!("`{s}` is not an earlier variable")));
    }
    Ok(Term::Var(s.to_string()))
}

fn parse_item(s: &str, known: &[String]) -> Result<Item> {
    match s.split_once("..") {
        Some((a, b)) => Ok(Item::Range(parse_term(a, known)?, parse_term(b, known)?)),
        None => Ok(Item::Single(parse_term(s, known)?)),
    }
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut products = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut vars: Vec<(String, Vec<Item>)> = Vec::new();
            for token in part.split(',').map(str::trim) {
                let known: Vec<String> = vars.iter().map(|(n, _)| n.clone()).collect();
                match token.split_once('=') {
                    Some((name, value)) => {
                        let name = name.trim();
                        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                            return Err(Error::Grid(format!("bad variable name `{name}`")));
                        }
                        if known.iter().any(|k| k == name) {
                            return Err(Error::Grid(format!("variable `{name}` repeated")));
                        }
                        let item = parse_item(value, &known)?;
                        vars.push((name.to_string(), vec![item]));
                    }
                    None => {
                        let item = parse_item(token, &known)?;
                        match vars.last_mut() {
                            Some((_, items)) => items.push(item),
                            None => return Err(Error::Grid(format!("value `{token}` before any variable"))),
                        }
                    }
                }
            }
            if vars.is_empty() {
                return Err(Error::Grid("empty product".into()));
            }
            products.push(Product { vars });
        }
        if products.is_empty() {
            return Err(Error::Grid("empty grid".into()));
        }
        Ok(Self { products })
    }

    /// Cells in nesting order, products in order of appearance.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for prod in &self.products {
            let mut cell = Cell::new();
            expand(&prod.vars, &mut cell, &mut out);
        }
        out
    }

    pub fn variables(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for p in &self.products {
            for (n, _) in &p.vars {
                if !names.contains(n) {
                    names.push(n.clone());
                }
            }
        }
        names
    }
}

fn eval(t: &Term, cell: &Cell) -> i64 {
    match t {
        Term::Int(v) => *v,
        Term::Var(name) => cell[name],
    }
}

fn expand(vars: &[(String, Vec<Item>)], cell: &mut Cell, out: &mut Vec<Cell>) {
    let Some(((name, items), rest)) = vars.split_first() else {
        out.push(cell.clone());
        return;
    };
    for item in items {
        let (lo, hi) = match item {
            Item::Single(t) => (eval(t, cell), eval(t, cell)),
            Item::Range(a, b) => (eval(a, cell), eval(b, cell)),
        };
        for v in lo..=hi {
            cell.insert(name.clone(), v);
            expand(rest, cell, out);
        }
    }
    cell.remove(name);
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(v) => write!(f, "{v}"),
            Term::Var(s) => f.write_str(s),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.products.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, (name, items)) in p.vars.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{name}=")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    match item {
                        Item::Single(t) => write!(f, "{t}")?,
                        Item::Range(a, b) => write!(f, "{a}..{b}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_ranges() {
        let g = GridSpec::parse("p=1..3,q=1..p,r=1..q,n=5,10,20").unwrap();
        let cells = g.cells();
        // 1 + 3 + 6 = 10 triples with r <= q <= p <= 3, times 3 values of n
        assert_eq!(cells.len(), 30);
        assert_eq!(cells[0], Cell::from([("p".into(), 1), ("q".into(), 1), ("r".into(), 1), ("n".into(), 5)]));
        assert_eq!(cells[2]["n"], 20);
        assert_eq!(g.to_string(), "p=1..3,q=1..p,r=1..q,n=5,10,20");
        assert_eq!(GridSpec::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn unions_and_mixed_items() {
        let g = GridSpec::parse("q=2,n=1..2,7; q=3,n=4").unwrap();
        let ns: Vec<(i64, i64)> = g.cells().iter().map(|c| (c["q"], c["n"])).collect();
        assert_eq!(ns, vec![(2, 1), (2, 2), (2, 7), (3, 4)]);
    }

    #[test]
    fn errors() {
        assert!(GridSpec::parse("q=1..p,p=3").is_err());
        assert!(GridSpec::parse("5,p=1").is_err());
        assert!(GridSpec::parse("p=1,p=2").is_err());
        assert!(GridSpec::parse("").is_err());
        assert!(GridSpec::parse("p=a-b").is_err());
    }
}
