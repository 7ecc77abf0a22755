//! Line-oriented text format for GQC codes. A file holds `q=`, `blocks=`,
//! and repeated `gen=` lines; polynomials are ascending comma-separated
//! coefficient indices, generator blocks are separated by `|`. Non-prime q
//! additionally needs `p=` and `modulus=` (the extension modulus over F_p).
//! `#` starts a comment; blank lines are ignored.

use crate::cyclic::RingElem;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::gqc::GqcCode;
use crate::polyring::Poly;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize_list(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("invalid integer '{}'", t.trim())))
        })
        .collect()
}

/// Parses the text format into a [`GqcCode`]. Errors carry 1-based line
/// numbers.
pub fn parse_code_spec(text: &str) -> Result<GqcCode> {
    let mut q: Option<(usize, u64)> = None;
    let mut p: Option<(usize, u64)> = None;
    let mut modulus: Option<(usize, Vec<u64>)> = None;
    let mut blocks: Option<(usize, Vec<usize>)> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(lineno, "expected key=value"))?;
        let value = value.trim();
        match key.trim() {
            "q" => {
                let v = value
                    .parse::<u64>()
                    .map_err(|_| parse_err(lineno, "invalid q"))?;
                if q.replace((lineno, v)).is_some() {
                    return Err(parse_err(lineno, "duplicate q line"));
                }
            }
            "p" => {
                let v = value
                    .parse::<u64>()
                    .map_err(|_| parse_err(lineno, "invalid p"))?;
                if p.replace((lineno, v)).is_some() {
                    return Err(parse_err(lineno, "duplicate p line"));
                }
            }
            "modulus" => {
                let v = value
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| parse_err(lineno, "invalid modulus coefficient"))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                if modulus.replace((lineno, v)).is_some() {
                    return Err(parse_err(lineno, "duplicate modulus line"));
                }
            }
            "blocks" => {
                let v = parse_usize_list(lineno, value)?;
                if blocks.replace((lineno, v)).is_some() {
                    return Err(parse_err(lineno, "duplicate blocks line"));
                }
            }
            "gen" => gens.push((lineno, value.to_string())),
            other => return Err(parse_err(lineno, format!("unknown key '{other}'"))),
        }
    }
    let (q_line, q) = q.ok_or_else(|| parse_err(0, "missing q line"))?;
    let field = if crate::gf::is_prime(q) {
        if let Some((l, _)) = p {
            return Err(parse_err(l, "p line is only allowed for non-prime q"));
        }
        if let Some((l, _)) = modulus {
            return Err(parse_err(l, "modulus line is only allowed for non-prime q"));
        }
        Field::prime(q)
    } else {
        let (p_line, p) =
            p.ok_or_else(|| parse_err(q_line, "non-prime q needs a p line"))?;
        let (mod_line, mod_coeffs) =
            modulus.ok_or_else(|| parse_err(q_line, "non-prime q needs a modulus line"))?;
        if !crate::gf::is_prime(p) {
            return Err(parse_err(p_line, "p must be prime"));
        }
        let base = Field::prime(p);
        if mod_coeffs.iter().any(|&c| c >= p) {
            return Err(parse_err(mod_line, "modulus coefficient out of range"));
        }
        let poly = Poly::from_coeffs(
            &base,
            mod_coeffs.iter().map(|&c| base.element_from_index(c)).collect(),
        );
        let ext = Field::make_extension(&base, &poly)
            .map_err(|e| parse_err(mod_line, format!("bad modulus: {e}")))?;
        if ext.cardinality() != q {
            return Err(parse_err(mod_line, format!(
                "modulus gives a field of size {}, not q={q}",
                ext.cardinality()
            )));
        }
        ext
    };
    let (_, blocks) = blocks.ok_or_else(|| parse_err(0, "missing blocks line"))?;
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(parse_err(0, "blocks must be positive"));
    }
    let mut generators = Vec::with_capacity(gens.len());
    for (lineno, text) in gens {
        let parts: Vec<&str> = text.split('|').map(str::trim).collect();
        if parts.len() != blocks.len() {
            return Err(parse_err(
                lineno,
                format!("generator has {} blocks, expected {}", parts.len(), blocks.len()),
            ));
        }
        let mut tuple = Vec::with_capacity(blocks.len());
        for (part, &m) in parts.iter().zip(&blocks) {
            let coeffs: Vec<u64> = part
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| parse_err(lineno, format!("invalid coefficient '{}'", t.trim())))
                })
                .collect::<Result<Vec<u64>>>()?;
            if coeffs.len() > m {
                return Err(parse_err(
                    lineno,
                    format!("polynomial has {} coefficients, block length is {m}", coeffs.len()),
                ));
            }
            if coeffs.iter().any(|&c| c >= field.cardinality()) {
                return Err(parse_err(lineno, "coefficient index out of field range"));
            }
            let mut cs: Vec<_> = coeffs.iter().map(|&c| field.element_from_index(c)).collect();
            cs.resize(m, field.zero());
            tuple.push(RingElem::from_coeffs(&field, cs));
        }
        generators.push(tuple);
    }
    Ok(GqcCode::new(&field, blocks, generators))
}

/// Canonical text form: full-length coefficient lists, one generator per
/// line, in the stored order. parse(serialize(c)) reproduces c exactly.
pub fn serialize_code_spec(code: &GqcCode) -> String {
    let field = code.field();
    let mut out = String::new();
    out.push_str(&format!("q={}\n", field.cardinality()));
    if field.degree() > 1 {
        out.push_str(&format!("p={}\n", field.characteristic()));
        let modulus = field.modulus().expect("non-prime fields carry a modulus");
        let cs: Vec<String> = modulus.coeffs().iter().map(|c| c.index().to_string()).collect();
        out.push_str(&format!("modulus={}\n", cs.join(",")));
    }
    let blocks: Vec<String> = code.blocks().iter().map(|m| m.to_string()).collect();
    out.push_str(&format!("blocks={}\n", blocks.join(",")));
    for tuple in code.generators() {
        let parts: Vec<String> = tuple
            .iter()
            .map(|e| {
                e.coeffs()
                    .iter()
                    .map(|c| c.index().to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        out.push_str(&format!("gen={}\n", parts.join(" | ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldElement;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_a_basic_file() {
        let text = "\
# Cordaro-Wagner generators
q=2
blocks=6,5,5
gen=1,1,1,1,1,1 | 0 | 1,1,1,1,1
gen=0 | 1,1,1,1,1 | 1,1,1,1,1
";
        let code = parse_code_spec(text).unwrap();
        assert_eq!(code.blocks(), &[6, 5, 5]);
        assert_eq!(code.generators().len(), 2);
        let lin = code.to_linear();
        assert_eq!((lin.dim(), lin.min_distance().unwrap()), (2, 10));
    }

    #[test]
    fn parses_extension_field_header() {
        let text = "q=4\np=2\nmodulus=1,1,1\nblocks=3\ngen=2,3,1\n";
        let code = parse_code_spec(text).unwrap();
        assert_eq!(code.field().cardinality(), 4);
        assert_eq!(code.field().characteristic(), 2);
    }

    #[test]
    fn rejects_wrong_arity_with_line_number() {
        let text = "q=2\nblocks=3,5\ngen=1,1\n";
        match parse_code_spec(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_oversized_polynomial() {
        let text = "q=2\nblocks=3\ngen=1,1,1,1\n";
        assert!(matches!(parse_code_spec(text), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn rejects_out_of_range_coefficient() {
        let text = "q=2\nblocks=3\ngen=2\n";
        assert!(matches!(parse_code_spec(text), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn rejects_modulus_for_prime_q() {
        let text = "q=3\nmodulus=1,1\nblocks=3\n";
        assert!(matches!(parse_code_spec(text), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn rejects_reducible_modulus() {
        let text = "q=4\np=2\nmodulus=1,0,1\nblocks=3\n";
        assert!(matches!(parse_code_spec(text), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn round_trips_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for case in 0..20 {
            let field = if case % 2 == 0 { Field::prime(2) } else { Field::prime(3) };
            let q = field.cardinality();
            let blocks = vec![rng.gen_range(1..=9), rng.gen_range(1..=9)];
            let gens: Vec<Vec<RingElem>> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    blocks
                        .iter()
                        .map(|&m| {
                            let cs: Vec<FieldElement> = (0..m)
                                .map(|_| field.element_from_index(rng.gen_range(0..q)))
                                .collect();
                            RingElem::from_coeffs(&field, cs)
                        })
                        .collect()
                })
                .collect();
            let code = GqcCode::new(&field, blocks, gens);
            let text = serialize_code_spec(&code);
            let back = parse_code_spec(&text).unwrap();
            assert_eq!(back.blocks(), code.blocks());
            assert_eq!(back.generators().len(), code.generators().len());
            assert!(back.equivalent(&code));
            // canonical files are fixed points of parse-then-serialize
            assert_eq!(serialize_code_spec(&back), text);
        }
    }

    #[test]
    fn round_trips_extension_field_codes() {
        let f2 = Field::prime(2);
        let m = Poly::from_coeffs(&f2, vec![f2.one(), f2.one(), f2.one()]);
        let f4 = Field::make_extension(&f2, &m).unwrap();
        let code = GqcCode::new(
            &f4,
            vec![3, 5],
            vec![vec![
                RingElem::from_coeffs(&f4, vec![f4.alpha(), f4.one(), f4.zero()]),
                RingElem::one(&f4, 5),
            ]],
        );
        let text = serialize_code_spec(&code);
        let back = parse_code_spec(&text).unwrap();
        assert!(back.equivalent(&code));
    }
}
