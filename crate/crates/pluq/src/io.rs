//! Text formats for matrices over a prime field.
//!
//! Two formats are supported:
//!
//! * **dense**: a header line `m n p` followed by `m` lines of `n` base-10
//!   residues; the modulus travels with the file;
//! * **SMS sparse**: a header line `m n M`, entry lines `i j v` with
//!   1-based coordinates, and a `0 0 0` terminator. The format carries no
//!   modulus, so the reader takes the field as a parameter; matrices are
//!   densified on load.
//!
//! All values are reduced modulo p on load. [`read_matrix`] sniffs the
//! header to pick the format.

use std::io::{BufRead, Write};

use crate::field::PrimeField;
use crate::matrix::DenseMatrix;
use crate::Error;

fn parse_num<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T, Error> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("invalid {what}: {tok:?}")))
}

fn header_tokens(line: &str) -> Result<Vec<String>, Error> {
    let toks: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
    if toks.len() != 3 {
        return Err(Error::Parse(format!(
            "expected a 3-token header line, got {line:?}"
        )));
    }
    Ok(toks)
}

fn first_nonblank_line(reader: &mut impl BufRead) -> Result<String, Error> {
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Err(Error::Parse("empty input".into()));
        }
        if !line.trim().is_empty() {
            return Ok(line.trim().to_owned());
        }
    }
}

/// Reads the dense format: `m n p` header then `m` rows of `n` residues.
pub fn read_dense(reader: &mut impl BufRead) -> Result<(DenseMatrix, PrimeField), Error> {
    let header = first_nonblank_line(reader)?;
    let toks = header_tokens(&header)?;
    let (m, n, p) = parse_dense_header(&toks)?;
    let field = PrimeField::new(p)?;
    let mut a = DenseMatrix::zeros(m, n);
    for i in 0..m {
        let line = first_nonblank_line(reader)
            .map_err(|_| Error::Parse(format!("expected {m} rows, got {i}")))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                entries.len()
            )));
        }
        for (j, tok) in entries.iter().enumerate() {
            let v: u64 = parse_num(tok, "entry")?;
            a.set(i, j, v % p);
        }
    }
    Ok((a, field))
}

fn parse_dense_header(toks: &[String]) -> Result<(usize, usize, u64), Error> {
    Ok((
        parse_num(&toks[0], "row count")?,
        parse_num(&toks[1], "column count")?,
        parse_num(&toks[2], "modulus")?,
    ))
}

/// Writes the dense format.
pub fn write_dense(
    writer: &mut impl Write,
    field: &PrimeField,
    a: &DenseMatrix,
) -> Result<(), Error> {
    writeln!(writer, "{} {} {}", a.rows(), a.cols(), field.modulus())?;
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(u64::to_string).collect();
        writeln!(writer, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Reads the SMS sparse format (`m n M` header, 1-based `i j v` entries,
/// `0 0 0` terminator) into a dense matrix over `field`.
pub fn read_sms(reader: &mut impl BufRead, field: &PrimeField) -> Result<DenseMatrix, Error> {
    let header = first_nonblank_line(reader)?;
    let toks = header_tokens(&header)?;
    if toks[2] != "M" {
        return Err(Error::Parse(format!(
            "expected sparse header marker \"M\", got {:?}",
            toks[2]
        )));
    }
    let m: usize = parse_num(&toks[0], "row count")?;
    let n: usize = parse_num(&toks[1], "column count")?;
    read_sms_entries(reader, field, m, n)
}

fn read_sms_entries(
    reader: &mut impl BufRead,
    field: &PrimeField,
    m: usize,
    n: usize,
) -> Result<DenseMatrix, Error> {
    let p = field.modulus();
    let mut a = DenseMatrix::zeros(m, n);
    loop {
        let line = first_nonblank_line(reader)
            .map_err(|_| Error::Parse("missing \"0 0 0\" terminator".into()))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse(format!("bad sparse entry line {line:?}")));
        }
        let i: usize = parse_num(toks[0], "row index")?;
        let j: usize = parse_num(toks[1], "column index")?;
        let v: i64 = parse_num(toks[2], "entry")?;
        if i == 0 && j == 0 && v == 0 {
            return Ok(a);
        }
        if i == 0 || i > m || j == 0 || j > n {
            return Err(Error::Parse(format!(
                "sparse entry ({i}, {j}) out of bounds for a {m}x{n} matrix"
            )));
        }
        a.set(i - 1, j - 1, v.rem_euclid(p as i64) as u64);
    }
}

/// Writes the SMS sparse format, skipping explicit zeros.
pub fn write_sms(writer: &mut impl Write, a: &DenseMatrix) -> Result<(), Error> {
    writeln!(writer, "{} {} M", a.rows(), a.cols())?;
    for i in 0..a.rows() {
        for (j, &v) in a.row(i).iter().enumerate() {
            if v != 0 {
                writeln!(writer, "{} {} {}", i + 1, j + 1, v)?;
            }
        }
    }
    writeln!(writer, "0 0 0")?;
    Ok(())
}

/// Reads either format, sniffing the header: a numeric third token means
/// dense (the modulus comes from the file), the marker `M` means SMS (the
/// modulus must be supplied by the caller as `prime`). A `prime` supplied
/// alongside a dense file must agree with the file's own modulus.
pub fn read_matrix(
    reader: &mut impl BufRead,
    prime: Option<u64>,
) -> Result<(DenseMatrix, PrimeField), Error> {
    let header = first_nonblank_line(reader)?;
    let toks = header_tokens(&header)?;
    if toks[2] == "M" {
        let p = prime.ok_or_else(|| {
            Error::Parse("sparse input carries no modulus; a prime must be supplied".into())
        })?;
        let field = PrimeField::new(p)?;
        let m: usize = parse_num(&toks[0], "row count")?;
        let n: usize = parse_num(&toks[1], "column count")?;
        let a = read_sms_entries(reader, &field, m, n)?;
        Ok((a, field))
    } else {
        let (m, n, p) = parse_dense_header(&toks)?;
        if let Some(q) = prime {
            if q != p {
                return Err(Error::Parse(format!(
                    "requested modulus {q} disagrees with the file's modulus {p}"
                )));
            }
        }
        let mut rest = Vec::new();
        reader.read_to_end(&mut rest)?;
        let text = String::from_utf8(rest)
            .map_err(|_| Error::Parse("matrix file is not valid UTF-8".into()))?;
        let body = format!("{m} {n} {p}\n{text}");
        read_dense(&mut body.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn golden() -> (DenseMatrix, PrimeField) {
        let f = PrimeField::new(7).unwrap();
        let a = DenseMatrix::from_rows(&[
            vec![2, 0, 3, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 4, 0],
            vec![0, 2, 0, 1],
        ]);
        (a, f)
    }

    #[test]
    fn dense_round_trip() {
        let (a, f) = golden();
        let mut buf = Vec::new();
        write_dense(&mut buf, &f, &a).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("4 4 7\n2 0 3 0\n"));
        let (b, g) = read_dense(&mut buf.as_slice()).unwrap();
        assert_eq!(a, b);
        assert_eq!(g.modulus(), 7);
    }

    #[test]
    fn dense_values_are_reduced_on_load() {
        let text = "1 3 5\n5 6 17\n";
        let (a, _) = read_dense(&mut text.as_bytes()).unwrap();
        assert_eq!(a.row(0), &[0, 1, 2]);
    }

    #[test]
    fn sms_round_trip() {
        let (a, f) = golden();
        let mut buf = Vec::new();
        write_sms(&mut buf, &a).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("4 4 M\n1 1 2\n"));
        assert!(text.ends_with("0 0 0\n"));
        let b = read_sms(&mut buf.as_slice(), &f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sms_accepts_negative_residues() {
        let f = PrimeField::new(7).unwrap();
        let text = "2 2 M\n1 1 -1\n2 2 13\n0 0 0\n";
        let a = read_sms(&mut text.as_bytes(), &f).unwrap();
        assert_eq!(a.get(0, 0), 6);
        assert_eq!(a.get(1, 1), 6);
    }

    #[test]
    fn header_sniffing_picks_the_format() {
        let (a, f) = golden();
        let mut dense = Vec::new();
        write_dense(&mut dense, &f, &a).unwrap();
        let (b, g) = read_matrix(&mut dense.as_slice(), None).unwrap();
        assert_eq!(a, b);
        assert_eq!(g.modulus(), 7);

        let mut sparse = Vec::new();
        write_sms(&mut sparse, &a).unwrap();
        let (c, h) = read_matrix(&mut sparse.as_slice(), Some(7)).unwrap();
        assert_eq!(a, c);
        assert_eq!(h.modulus(), 7);
    }

    #[test]
    fn sparse_without_prime_is_a_parse_error() {
        let text = "1 1 M\n0 0 0\n";
        assert!(matches!(
            read_matrix(&mut text.as_bytes(), None),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn dense_prime_mismatch_is_a_parse_error() {
        let text = "1 1 7\n3\n";
        assert!(matches!(
            read_matrix(&mut text.as_bytes(), Some(11)),
            Err(Error::Parse(_))
        ));
        assert!(read_matrix(&mut text.as_bytes(), Some(7)).is_ok());
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        for text in [
            "",
            "2 2\n",
            "2 2 7\n1 2\n",          // short row
            "2 2 7\n1 2 3\n4 5 6\n", // long row
            "1 1 7\n",               // missing row
            "2 2 M\n1 1 1\n",        // missing terminator
            "2 2 M\n3 1 1\n0 0 0\n", // out of bounds
            "2 2 X\n",               // unknown marker with sniffing
            "a b c\n",
        ] {
            assert!(
                matches!(read_matrix(&mut text.as_bytes(), Some(7)), Err(Error::Parse(_))),
                "input {text:?} should fail to parse"
            );
        }
    }

    #[test]
    fn empty_matrix_round_trips() {
        let f = PrimeField::new(5).unwrap();
        let a = DenseMatrix::zeros(0, 0);
        let mut buf = Vec::new();
        write_dense(&mut buf, &f, &a).unwrap();
        let (b, _) = read_dense(&mut buf.as_slice()).unwrap();
        assert_eq!(b.rows(), 0);
        let mut buf = Vec::new();
        write_sms(&mut buf, &a).unwrap();
        let c = read_sms(&mut buf.as_slice(), &f).unwrap();
        assert_eq!(c.rows(), 0);
    }

    #[test]
    fn random_round_trips_both_formats() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let a = DenseMatrix::random(5, 8, &f, &mut rng);
            let mut buf = Vec::new();
            write_dense(&mut buf, &f, &a).unwrap();
            assert_eq!(read_dense(&mut buf.as_slice()).unwrap().0, a);
            let mut buf = Vec::new();
            write_sms(&mut buf, &a).unwrap();
            assert_eq!(read_sms(&mut buf.as_slice(), &f).unwrap(), a);
        }
    }
}
