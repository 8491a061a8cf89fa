use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ParseError;
use crate::analysis::FuncSample;
use crate::rat::Rat;

pub const SAMPLE_HEADER: &str = "x_num,x_den,f_num,f_den";
pub const VALUES_HEADER: &str = "j,num,den";

/// Reads a sample table. The ball range runs from `1` to `floor(1/r)` for
/// the least nonzero `|x| = r`.
pub fn parse_sample_csv(text: &str) -> Result<FuncSample, super::DslError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == SAMPLE_HEADER => {}
        Some((i, _)) => return Err(ParseError::new(i + 1, 1, format!("header `{SAMPLE_HEADER}`")).into()),
        None => return Err(ParseError::new(1, 1, format!("header `{SAMPLE_HEADER}`")).into()),
    }
    let mut pts = Vec::new();
    for (i, l) in lines {
        let mut nums = Vec::with_capacity(4);
        let mut col = 1;
        for field in l.split(',') {
            let n: BigInt = field
                .trim()
                .parse()
                .map_err(|_| ParseError::new(i + 1, col, "an integer").found(format!("`{}`", field.trim())))?;
            nums.push((n, col));
            col += field.chars().count() + 1;
        }
        if nums.len() != 4 {
            return Err(ParseError::new(i + 1, 1, "four fields").found(format!("{}", nums.len())).into());
        }
        for k in [1, 3] {
            if nums[k].0 == BigInt::from(0) {
                return Err(ParseError::new(i + 1, nums[k].1, "a nonzero denominator").into());
            }
        }
        let x = Rat::new(nums[0].0.clone(), nums[1].0.clone());
        let f = Rat::new(nums[2].0.clone(), nums[3].0.clone());
        pts.push((x, f));
    }
    let least = pts.iter().filter(|(x, _)| !x.is_zero()).map(|(x, _)| x.abs()).min();
    let j_to = least
        .and_then(|r| r.recip())
        .map(|r| r.floor().to_u64().unwrap_or(u64::MAX).max(1))
        .unwrap_or(1);
    Ok(FuncSample::from_points(pts, 1, j_to)?)
}

/// `j,num,den` rows.
pub fn values_csv(rows: &[(u64, Rat)]) -> String {
    let mut out = String::from(VALUES_HEADER);
    out.push('\n');
    for (j, v) in rows {
        out.push_str(&format!("{j},{},{}\n", v.numer(), v.denom()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::DslError;

    #[test]
    fn reads_points() {
        let s = parse_sample_csv("x_num,x_den,f_num,f_den\n0,1,0,1\n1,4,1,16\n-1,4,1,16\n").unwrap();
        assert_eq!(s.points().len(), 3);
        assert_eq!(s.j_to(), 4);
    }

    #[test]
    fn reports_bad_field() {
        match parse_sample_csv("x_num,x_den,f_num,f_den\n0,1,0,1\n1,x,1,16\n") {
            Err(DslError::Parse(e)) => assert_eq!((e.line, e.column), (3, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_sample_csv("x,y\n"), Err(DslError::Parse(_))));
        assert!(matches!(parse_sample_csv("x_num,x_den,f_num,f_den\n1,2,1,1\n"), Err(DslError::Germ(_))));
    }

    #[test]
    fn writes_values() {
        let rows = [(1, Rat::new(1, 2)), (2, Rat::from_int(3))];
        assert_eq!(values_csv(&rows), "j,num,den\n1,1,2\n2,3,1\n");
    }
}
