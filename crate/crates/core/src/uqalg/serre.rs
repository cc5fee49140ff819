//! Normal forms of words in the positive (or negative) part modulo the deformed
//! Serre relations, computed one multidegree at a time.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qarith::q_binom;
use crate::rational::int;
use crate::rootsys::RootSystemData;
use crate::scalar::LaurentScalar;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

type S = LaurentScalar;
pub type Word = Vec<u8>;

/// A relator `Σ_r coeff_r · i^{m-r} j i^r` for an ordered pair `(i, j)`.
#[derive(Clone, Debug)]
struct Relator {
    terms: Vec<(Word, S)>,
    degree: Vec<u32>,
}

#[derive(Debug)]
struct DegreeData {
    standard: Vec<Word>,
    rules: HashMap<Word, Vec<(Word, S)>>,
}

#[derive(Debug)]
pub struct SerreReducer {
    rank: usize,
    relators: Vec<Relator>,
    positive_roots: Vec<Vec<i64>>,
    degrees: Mutex<HashMap<Vec<u32>, Arc<DegreeData>>>,
}

impl SerreReducer {
    /// Relators `Σ_r (−1)^r q^{r c_ij} [1−a_ij choose r]_{q_i} x_i^{1−a_ij−r} x_j x_i^r`.
    pub fn new(rs: &RootSystemData, cayley: &crate::linalg::QMatrix) -> Result<Self> {
        let l = rs.rank;
        let mut relators = Vec::new();
        for i in 0..l {
            for j in 0..l {
                if i == j || (rs.cartan[i][j] == 0 && i > j) {
                    continue;
                }
                let m = (1 - rs.cartan[i][j]) as u32;
                let mut terms = Vec::new();
                for r in 0..=m {
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let coeff = q_binom(m, r, &int(rs.d[i]))? * S::q_pow(&(&cayley[(i, j)] * int(r as i64))) * S::from_int(sign);
                    let mut w = vec![i as u8; (m - r) as usize];
                    w.push(j as u8);
                    w.extend(std::iter::repeat_n(i as u8, r as usize));
                    terms.push((w, coeff));
                }
                let mut degree = vec![0u32; l];
                degree[i] = m;
                degree[j] = 1;
                relators.push(Relator { terms, degree });
            }
        }
        Ok(SerreReducer {
            rank: l,
            relators,
            positive_roots: rs.positive_roots.clone(),
            degrees: Mutex::new(HashMap::new()),
        })
    }

    pub fn degree_of(&self, w: &[u8]) -> Vec<u32> {
        let mut d = vec![0u32; self.rank];
        for &x in w {
            d[x as usize] += 1;
        }
        d
    }

    /// Normal form of a word as a combination of standard words.
    pub fn normal_form(&self, w: &[u8]) -> Result<Vec<(Word, S)>> {
        if w.len() < 2 {
            return Ok(vec![(w.to_vec(), S::one())]);
        }
        let data = self.degree_data(&self.degree_of(w))?;
        Ok(match data.rules.get(w) {
            Some(r) => r.clone(),
            None => vec![(w.to_vec(), S::one())],
        })
    }

    pub fn is_standard(&self, w: &[u8]) -> Result<bool> {
        if w.len() < 2 {
            return Ok(true);
        }
        Ok(!self.degree_data(&self.degree_of(w))?.rules.contains_key(w))
    }

    /// Standard words of the given multidegree, in ascending lexicographic order.
    pub fn standard_words(&self, degree: &[u32]) -> Result<Vec<Word>> {
        Ok(self.degree_data(degree)?.standard.clone())
    }

    fn degree_data(&self, degree: &[u32]) -> Result<Arc<DegreeData>> {
        if let Some(d) = self.degrees.lock().expect("poisoned").get(degree) {
            return Ok(d.clone());
        }
        let data = Arc::new(self.compute(degree)?);
        self.degrees.lock().expect("poisoned").insert(degree.to_vec(), data.clone());
        Ok(data)
    }

    fn compute(&self, degree: &[u32]) -> Result<DegreeData> {
        let mut words = words_of_degree(degree);
        words.sort();
        words.reverse();
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let mut rows: Vec<Vec<S>> = Vec::new();
        for rel in &self.relators {
            let Some(rest) = subtract(degree, &rel.degree) else { continue };
            for w in words_of_degree(&rest) {
                for cut in 0..=w.len() {
                    let mut row = vec![S::zero(); words.len()];
                    for (t, c) in &rel.terms {
                        let mut full = w[..cut].to_vec();
                        full.extend_from_slice(t);
                        full.extend_from_slice(&w[cut..]);
                        let k = index[&full];
                        row[k] = &row[k] + c;
                    }
                    rows.push(row);
                }
            }
        }
        let mut rules = HashMap::new();
        let mut standard: Vec<Word>;
        if rows.is_empty() {
            standard = words.clone();
        } else {
            let (r, pivots) = Matrix::from_rows(rows).rref();
            let free: Vec<usize> = (0..words.len()).filter(|c| !pivots.contains(c)).collect();
            for (k, &p) in pivots.iter().enumerate() {
                let rhs: Vec<(Word, S)> = free
                    .iter()
                    .filter(|&&c| !r[(k, c)].is_zero())
                    .map(|&c| (words[c].clone(), -&r[(k, c)]))
                    .collect();
                rules.insert(words[p].clone(), rhs);
            }
            standard = free.iter().map(|&c| words[c].clone()).collect();
        }
        standard.sort();
        let expected = kostant_partition(&self.positive_roots, degree);
        if standard.len() != expected {
            return Err(Error::Invariant(format!(
                "degree {:?}: {} standard words but the partition function gives {}",
                degree,
                standard.len(),
                expected
            )));
        }
        Ok(DegreeData { standard, rules })
    }
}

fn subtract(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

/// All words with the given letter multiplicities.
pub fn words_of_degree(degree: &[u32]) -> Vec<Word> {
    fn go(rem: &mut Vec<u32>, cur: &mut Word, out: &mut Vec<Word>, left: u32) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                go(rem, cur, out, left - 1);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let total = degree.iter().sum();
    go(&mut degree.to_vec(), &mut Vec::new(), &mut out, total);
    out
}

/// Number of ways to write `degree` as an unordered sum of positive roots.
pub fn kostant_partition(roots: &[Vec<i64>], degree: &[u32]) -> usize {
    fn go(roots: &[Vec<i64>], k: usize, rem: &mut Vec<i64>, memo: &mut HashMap<(usize, Vec<i64>), usize>) -> usize {
        if rem.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(k, rem.clone())) {
            return v;
        }
        let mut total = 0;
        let mut used = 0;
        loop {
            total += go(roots, k + 1, rem, memo);
            if rem.iter().zip(&roots[k]).any(|(r, x)| r < x) {
                break;
            }
            for (r, x) in rem.iter_mut().zip(&roots[k]) {
                *r -= x;
            }
            used += 1;
        }
        for (r, x) in rem.iter_mut().zip(&roots[k]) {
            *r += x * used;
        }
        memo.insert((k, rem.clone()), total);
        total
    }
    let mut rem: Vec<i64> = degree.iter().map(|&x| x as i64).collect();
    go(roots, 0, &mut rem, &mut HashMap::new())
}
