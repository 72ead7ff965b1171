//! Degree matrices: each node's row lists its neighbors' degrees sorted
//! ascending, zero-padded to a shared width.
//!
//! Note this is not the diagonal degree matrix of spectral graph theory.
//! Row `i` describes node `node_of_row(i)`; the row content depends only on
//! graph structure, never on index order, which is what makes the whole
//! comparison labeling-invariant (rows just travel under relabeling).

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// N x m matrix of sorted, zero-padded neighbor degrees. Entries are reals
/// so the weighted variant shares the representation; plain matrices hold
/// exact integers.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeMatrix {
    n: usize,
    m: usize,
    rows: Vec<f64>,
    node_of_row: Vec<usize>,
}

impl DegreeMatrix {
    pub fn n_rows(&self) -> usize {
        self.n
    }

    /// Column count (the larger max degree of the pair).
    pub fn width(&self) -> usize {
        self.m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.chunks(self.m.max(1)).take(if self.m == 0 { 0 } else { self.n })
    }

    /// Graph node index described by row `i`.
    pub fn node_of_row(&self, i: usize) -> usize {
        self.node_of_row[i]
    }

    /// Reorders rows: row `i` of the result is row `perm[i]` of `self`, and
    /// the node binding travels with the row.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<DegreeMatrix> {
        if perm.len() != self.n {
            return Err(Error::Param(format!(
                "permutation length {} != row count {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::Param("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut node_of_row = Vec::with_capacity(self.n);
        for &src in perm {
            rows.extend_from_slice(&self.rows[src * self.m..(src + 1) * self.m]);
            node_of_row.push(self.node_of_row[src]);
        }
        Ok(DegreeMatrix { n: self.n, m: self.m, rows, node_of_row })
    }

    /// One row per line, comma-separated. Debug dump format.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for i in 0..self.n {
            let row = self.row(i);
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn build(g: &Graph, m: usize, entry: impl Fn(usize, usize, f64) -> f64) -> DegreeMatrix {
        let n = g.node_count();
        let mut rows = vec![0.0; n * m];
        for v in 0..n {
            let mut vals: Vec<f64> =
                g.neighbors(v).iter().map(|&(u, w)| entry(v, u, w)).collect();
            vals.sort_by(|a, b| a.partial_cmp(b).expect("degree entries are finite"));
            rows[v * m..v * m + vals.len()].copy_from_slice(&vals);
        }
        DegreeMatrix { n, m, rows, node_of_row: (0..n).collect() }
    }
}

/// Plain degree matrices for a pair of equal-order graphs, sharing column
/// count `m = max(max_deg(g1), max_deg(g2))`.
pub fn build_degree_matrices(g1: &Graph, g2: &Graph) -> Result<(DegreeMatrix, DegreeMatrix)> {
    if g1.node_count() != g2.node_count() {
        return Err(Error::Dimension(format!(
            "graphs have {} and {} nodes",
            g1.node_count(),
            g2.node_count()
        )));
    }
    let m = g1.max_degree().max(g2.max_degree());
    let entry = |_v: usize, u: usize, _w: f64| 0.0f64.max(0.0); // placeholder, replaced below
    let _ = entry;
    let m1 = DegreeMatrix::build(g1, m, |_, u, _| g1.degree(u) as f64);
    let m2 = DegreeMatrix::build(g2, m, |_, u, _| g2.degree(u) as f64);
    Ok((m1, m2))
}

/// Weighted degree matrices: the entry for neighbor `u` of node `v` is
/// `deg(u) * w(v, u)`. Column count still comes from the unweighted max
/// degree (entry count per row is the plain degree).
pub fn build_weighted_degree_matrices(
    g1: &Graph,
    g2: &Graph,
) -> Result<(DegreeMatrix, DegreeMatrix)> {
    if g1.node_count() != g2.node_count() {
        return Err(Error::Dimension(format!(
            "graphs have {} and {} nodes",
            g1.node_count(),
            g2.node_count()
        )));
    }
    if !g1.is_weighted() || !g2.is_weighted() {
        return Err(Error::Data("weighted degree matrices require weighted graphs".into()));
    }
    let m = g1.max_degree().max(g2.max_degree());
    let m1 = DegreeMatrix::build(g1, m, |_, u, w| g1.degree(u) as f64 * w);
    let m2 = DegreeMatrix::build(g2, m, |_, u, w| g2.degree(u) as f64 * w);
    Ok((m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, GraphBuilder};

    /// F1 of the worked example: a 4-clique on nodes 2..5 plus the pendant
    /// edge 1 -- 2.
    pub(crate) fn example_f1() -> Graph {
        Graph::from_label_edges(&[
            ("1", "2"),
            ("2", "3"),
            ("2", "4"),
            ("2", "5"),
            ("3", "4"),
            ("3", "5"),
            ("4", "5"),
        ])
        .unwrap()
    }

    /// F2 of the worked example.
    pub(crate) fn example_f2() -> Graph {
        Graph::from_label_edges(&[
            ("1", "2"),
            ("1", "3"),
            ("1", "5"),
            ("2", "5"),
            ("3", "4"),
            ("3", "5"),
            ("4", "5"),
        ])
        .unwrap()
    }

    fn rows_of(m: &DegreeMatrix) -> Vec<Vec<f64>> {
        (0..m.n_rows()).map(|i| m.row(i).to_vec()).collect()
    }

    #[test]
    fn worked_example_matrices() {
        let f1 = example_f1();
        let f2 = example_f2();
        let (m1, m2) = build_degree_matrices(&f1, &f2).unwrap();
        assert_eq!(m1.width(), 4);
        assert_eq!(
            rows_of(&m1),
            vec![
                vec![4.0, 0.0, 0.0, 0.0],
                vec![1.0, 3.0, 3.0, 3.0],
                vec![3.0, 3.0, 4.0, 0.0],
                vec![3.0, 3.0, 4.0, 0.0],
                vec![3.0, 3.0, 4.0, 0.0],
            ]
        );
        assert_eq!(
            rows_of(&m2),
            vec![
                vec![2.0, 3.0, 4.0, 0.0],
                vec![3.0, 4.0, 0.0, 0.0],
                vec![2.0, 3.0, 4.0, 0.0],
                vec![3.0, 4.0, 0.0, 0.0],
                vec![2.0, 2.0, 3.0, 3.0],
            ]
        );
        // degree of node 1 in F1 equals its row's nonzero count
        let idx = f1.index_of("2").unwrap();
        assert_eq!(f1.degree(idx), 4);
    }

    #[test]
    fn single_neighborhood_row_with_wide_padding() {
        // Hub with five neighbors of degrees 3,4,3,5,3 inside a larger graph;
        // at m = 10 its row reads [3,3,3,4,5,0,0,0,0,0].
        let mut edges: Vec<(String, String)> = Vec::new();
        let hub = "h".to_string();
        // five neighbors with prescribed degrees
        let want = [3usize, 4, 3, 5, 3];
        for (i, &d) in want.iter().enumerate() {
            let nb = format!("n{i}");
            edges.push((hub.clone(), nb.clone()));
            // pad each neighbor with fresh leaves to reach degree d
            for j in 0..d - 1 {
                edges.push((nb.clone(), format!("leaf{i}_{j}")));
            }
        }
        let refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = Graph::from_label_edges(&refs).unwrap();
        // force m = 10 by pairing with a star of max degree 10 and equal order
        let mut b = GraphBuilder::new(false);
        for i in 0..10 {
            b.add_edge("c", &format!("x{i}"), 1.0).unwrap();
        }
        for i in 0..(g.node_count() - 11) {
            b.add_node(&format!("iso{i}"));
        }
        let (partner, _, _) = b.build();
        assert_eq!(partner.node_count(), g.node_count());
        let (m1, _) = build_degree_matrices(&g, &partner).unwrap();
        let hub_row = m1.row(g.index_of("h").unwrap());
        assert_eq!(hub_row, &[3.0, 3.0, 3.0, 4.0, 5.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn isolated_node_gets_all_zero_row() {
        let mut b = GraphBuilder::new(false);
        b.add_edge("a", "b", 1.0).unwrap();
        b.add_node("iso");
        let (g, _, _) = b.build();
        let (m1, _) = build_degree_matrices(&g, &g).unwrap();
        assert_eq!(m1.row(g.index_of("iso").unwrap()), &[0.0]);
    }

    #[test]
    fn rows_sorted_and_nonzero_prefix_matches_degree() {
        let g = Graph::from_label_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")])
            .unwrap();
        let (m, _) = build_degree_matrices(&g, &g).unwrap();
        for i in 0..m.n_rows() {
            let row = m.row(i);
            let nz = row.iter().filter(|&&x| x != 0.0).count();
            assert_eq!(nz, g.degree(m.node_of_row(i)));
            let prefix = &row[..nz];
            assert!(prefix.windows(2).all(|w| w[0] <= w[1]), "row {i} not ascending");
            assert!(row[nz..].iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn unequal_orders_rejected() {
        let g1 = Graph::from_label_edges(&[("a", "b")]).unwrap();
        let g2 = Graph::from_label_edges(&[("a", "b"), ("b", "c")]).unwrap();
        assert!(matches!(build_degree_matrices(&g1, &g2), Err(Error::Dimension(_))));
    }

    #[test]
    fn weighted_unit_weights_reduce_to_plain() {
        let g1 = example_f1().as_weighted();
        let g2 = example_f2().as_weighted();
        let (w1, w2) = build_weighted_degree_matrices(&g1, &g2).unwrap();
        let (p1, p2) = build_degree_matrices(&g1, &g2).unwrap();
        assert_eq!(w1, p1);
        assert_eq!(w2, p2);
    }

    #[test]
    fn weighted_path_row() {
        // path a-b-c with w(a,b)=2, w(b,c)=0.5: row(b) = sorted[deg(a)*2, deg(c)*0.5]
        let mut b = GraphBuilder::new(true);
        b.add_edge("a", "b", 2.0).unwrap();
        b.add_edge("b", "c", 0.5).unwrap();
        let (g, _, _) = b.build();
        let (m, _) = build_weighted_degree_matrices(&g, &g).unwrap();
        assert_eq!(m.row(g.index_of("b").unwrap()), &[0.5, 2.0]);
    }

    #[test]
    fn weighted_single_edge() {
        let mut b = GraphBuilder::new(true);
        b.add_edge("a", "b", 3.0).unwrap();
        let (g, _, _) = b.build();
        let (m, _) = build_weighted_degree_matrices(&g, &g).unwrap();
        assert_eq!(m.row(0), &[3.0]);
        assert_eq!(m.row(1), &[3.0]);
    }

    #[test]
    fn weighted_requires_weighted_inputs() {
        let g = example_f1();
        assert!(matches!(
            build_weighted_degree_matrices(&g, &g),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn permute_rows_identity_inverse_compose() {
        let g = example_f1();
        let (m, _) = build_degree_matrices(&g, &g).unwrap();
        let n = m.n_rows();
        let identity: Vec<usize> = (0..n).collect();
        assert_eq!(m.permute_rows(&identity).unwrap(), m);

        let perm = vec![2, 0, 4, 1, 3];
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let once = m.permute_rows(&perm).unwrap();
        assert_eq!(once.permute_rows(&inverse).unwrap(), m);

        // composition: permuting twice equals permuting by the composite
        let q = vec![4, 3, 2, 1, 0];
        let twice = once.permute_rows(&q).unwrap();
        let composite: Vec<usize> = q.iter().map(|&j| perm[j]).collect();
        assert_eq!(twice, m.permute_rows(&composite).unwrap());
    }

    #[test]
    fn row_multiset_invariant_under_relabeling() {
        let g = Graph::from_label_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("a", "c"), ("d", "e")])
            .unwrap();
        let (shuffled, _) = g.relabel_shuffle(17);
        let (m_orig, _) = build_degree_matrices(&g, &g).unwrap();
        let (m_shuf, _) = build_degree_matrices(&shuffled, &g).unwrap();
        let mut a: Vec<Vec<f64>> = (0..m_orig.n_rows()).map(|i| m_orig.row(i).to_vec()).collect();
        let mut b: Vec<Vec<f64>> = (0..m_shuf.n_rows()).map(|i| m_shuf.row(i).to_vec()).collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn csv_dump_format() {
        let g = Graph::from_label_edges(&[("a", "b")]).unwrap();
        let (m, _) = build_degree_matrices(&g, &g).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1\n1\n");
    }
}
