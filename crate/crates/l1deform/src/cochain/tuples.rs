use super::Tuple;

/// Sorts ascending and returns the permutation sign, or `0` when an index
/// repeats.
pub fn sort_with_sign(args: &[i64]) -> (i32, Tuple) {
    let mut t = Tuple::from_slice(args);
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && t[j - 1] == t[j] {
            return (0, t);
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return (0, t);
    }
    (sign, t)
}

/// Strictly increasing tuples of length `q` with entries in `1..=max`.
pub fn tuples_with_max(q: usize, max: i64) -> Vec<Tuple> {
    let mut out = Vec::new();
    let mut cur = Tuple::new();
    fn rec(q: usize, lo: i64, max: i64, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in lo..=max {
            cur.push(i);
            rec(q, i + 1, max, cur, out);
            cur.pop();
        }
    }
    rec(q, 1, max, &mut cur, &mut out);
    out
}

/// Strictly increasing tuples of length `q`, entries `>= 1`, summing to `s`.
pub fn tuples_with_sum(q: usize, s: i64) -> Vec<Tuple> {
    let mut out = Vec::new();
    let mut cur = Tuple::new();
    fn rec(q: usize, lo: i64, rem: i64, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        let left = (q - cur.len()) as i64;
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // smallest completion is lo + (lo+1) + ... with `left` terms
        let mut i = lo;
        while left * i + left * (left - 1) / 2 <= rem {
            cur.push(i);
            rec(q, i + 1, rem - i, cur, out);
            cur.pop();
            i += 1;
        }
    }
    rec(q, 1, s, &mut cur, &mut out);
    out
}

pub fn tuples_with_sum_at_most(q: usize, s: i64) -> Vec<Tuple> {
    let min = (q * (q + 1) / 2) as i64;
    (min..=s).flat_map(|x| tuples_with_sum(q, x)).collect()
}
