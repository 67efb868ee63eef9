//! Properties of the three tree layouts over a seeded corpus of random trees.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use fewseg_core::generators::{random_labeled_tree, rng_from_seed, tree_corpus, TreeSpec};
use fewseg_core::geometry::GridPoint;
use fewseg_core::tree_layout::{round_vector, rounded_vector, FewSegLayout, SubtreeExtent};
use fewseg_core::{
    count_segments, heavy_path_decomposition, is_planar_drawing, layout_fewsegments, layout_quad,
    layout_tidier, odd_degree_bound, Drawing, FewSegParams, QuadParams, RootedTree,
};
use rand::Rng;

fn corpus() -> &'static [(TreeSpec, RootedTree)] {
    static CORPUS: OnceLock<Vec<(TreeSpec, RootedTree)>> = OnceLock::new();
    CORPUS.get_or_init(|| tree_corpus(200, 1).unwrap())
}

fn grid(d: &Drawing) -> &[GridPoint] {
    d.grid_points().expect("tree layouts are on the grid")
}

/// Segments of a tree drawing, by joining opposite collinear edges at each
/// vertex with a union-find.
fn segments_oracle(d: &Drawing) -> usize {
    let pts = grid(d);
    let edges = d.graph.edges();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); d.graph.n()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        at[a].push(i);
        at[b].push(i);
    }
    for (v, inc) in at.iter().enumerate() {
        let dir = |e: usize| {
            let (a, b) = edges[e];
            let o = if a == v { b } else { a };
            (pts[o].x - pts[v].x, pts[o].y - pts[v].y)
        };
        for (k, &e) in inc.iter().enumerate() {
            for &f in &inc[k + 1..] {
                let (p, q) = (dir(e), dir(f));
                let opposite = p.0 * q.1 == p.1 * q.0 && p.0 * q.0 + p.1 * q.1 < 0;
                if opposite {
                    let (x, y) = (find(&mut parent, e), find(&mut parent, f));
                    parent[x] = y;
                }
            }
        }
    }
    (0..edges.len()).filter(|&e| find(&mut parent, e) == e).count()
}

fn odd_vertices_half(t: &RootedTree) -> usize {
    let g = t.to_graph();
    let mut deg = vec![0usize; g.n()];
    for &(a, b) in g.edges() {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg.iter().filter(|&&d| d % 2 == 1).count() / 2
}

#[test]
fn corpus_covers_every_class_at_its_depth() {
    let mut classes = BTreeMap::new();
    for (spec, t) in corpus() {
        assert_eq!(t.n(), spec.vertices().unwrap());
        assert_eq!(t.depth(), spec.target_depth().unwrap());
        *classes
            .entry((spec.size_class, spec.depth_class.name()))
            .or_insert(0) += 1;
    }
    assert_eq!(classes.len(), 6);
    let depths: Vec<usize> = [1u8, 2]
        .iter()
        .flat_map(|&s| {
            fewseg_core::generators::DepthClass::ALL.map(|depth_class| {
                TreeSpec {
                    size_class: s,
                    depth_class,
                    seed: 0,
                }
                .target_depth()
                .unwrap()
            })
        })
        .collect();
    assert_eq!(depths, vec![8, 5, 3, 14, 9, 5]);
}

#[test]
fn fewsegments_uses_the_optimal_number_of_segments() {
    let mut spent = Duration::ZERO;
    for (spec, t) in corpus() {
        let start = Instant::now();
        let d = layout_fewsegments(t, FewSegParams::default()).unwrap();
        spent += start.elapsed();
        let bound = odd_vertices_half(t);
        assert_eq!(odd_degree_bound(t), bound);
        assert_eq!(segments_oracle(&d), bound, "{spec:?}");
        assert_eq!(count_segments(&d).0, bound, "{spec:?}");
    }
    assert!(spent < Duration::from_secs(60), "took {spent:?}");
}

#[test]
fn tree_layouts_are_planar() {
    for (spec, t) in corpus() {
        assert!(is_planar_drawing(&layout_tidier(t)), "tidier {spec:?}");
        let quad = layout_quad(t, QuadParams::default()).unwrap();
        assert!(is_planar_drawing(&quad), "quad {spec:?}");
        let few = layout_fewsegments(t, FewSegParams::default()).unwrap();
        assert!(is_planar_drawing(&few), "fewsegments {spec:?}");
    }
}

#[test]
fn layouts_are_deterministic() {
    for (_, t) in corpus().iter().take(20) {
        assert_eq!(layout_tidier(t), layout_tidier(t));
        let q = QuadParams::default();
        assert_eq!(layout_quad(t, q).unwrap(), layout_quad(t, q).unwrap());
        let f = FewSegParams::default();
        assert_eq!(layout_fewsegments(t, f).unwrap(), layout_fewsegments(t, f).unwrap());
    }
}

// ---- fewsegments internals -------------------------------------------------

#[test]
fn heuristic_rounds_never_grow_the_box() {
    for (spec, t) in corpus() {
        let mut layout = FewSegLayout::build(t, FewSegParams::default());
        let bound = odd_degree_bound(t);
        let (mut w, mut h) = layout.size();
        assert_eq!(layout.segment_count(), bound);
        let trace = layout.refine();
        assert_eq!(trace.len(), 10);
        for r in &trace {
            assert!(r.width <= w && r.height <= h, "{spec:?} {r:?}");
            assert_eq!(r.segments, bound, "{spec:?} {r:?}");
            (w, h) = (r.width, r.height);
        }
        let d = layout.drawing();
        assert!(is_planar_drawing(&d));
        assert_eq!(d, layout_fewsegments(t, FewSegParams::default()).unwrap());
    }
}

#[test]
fn few_light_edges_on_any_root_path() {
    for (_, t) in corpus() {
        let hpd = heavy_path_decomposition(t);
        let limit = (t.n() as f64).log2();
        for v in 0..t.n() {
            let mut light = 0;
            let mut u = v;
            while let Some(p) = t.parent(u) {
                light += usize::from(!hpd.is_heavy_edge(p, u));
                u = p;
            }
            assert!(light as f64 <= limit);
        }
    }
}

#[test]
fn heavy_paths_are_straight() {
    for (_, t) in corpus().iter().take(50) {
        let layout = FewSegLayout::build(t, FewSegParams::default());
        let pts = layout.positions();
        for path in layout.heavy_paths() {
            for w in path.windows(3) {
                let (a, b, c) = (pts[w[0]], pts[w[1]], pts[w[2]]);
                let (p, q) = (b - a, c - b);
                assert_eq!(p.x * q.y, p.y * q.x);
                assert!(p.x * q.x + p.y * q.y > 0);
            }
        }
    }
}

#[test]
fn six_eleven_rounds_to_one_two() {
    let v = rounded_vector(GridPoint::new(6, 11), 0, 1);
    assert_eq!(v, GridPoint::new(6, 12));
    assert_eq!(
        fewseg_core::geometry::primitive_vector(v).unwrap(),
        GridPoint::new(1, 2)
    );
}

/// Exhaustive minimum of the rounding cost, written independently of the
/// library search.
fn brute_rounding(
    v: GridPoint,
    s: i64,
    measure: &dyn Fn(GridPoint) -> Option<SubtreeExtent>,
) -> Option<(i64, i64, i64)> {
    let mut all = Vec::new();
    for i in 0..=s * v.x {
        for j in 0..=s * v.y {
            // slope (y + j) / (x + i) may not exceed y / x
            let steeper = ((v.y + j) as f64 / (v.x + i) as f64) > v.y as f64 / v.x as f64 + 1e-12;
            if steeper {
                continue;
            }
            if let Some(e) = measure(GridPoint::new(v.x + i, v.y + j)) {
                let other = e.partner.map(|(w, h)| w + h).unwrap_or(0);
                all.push((i + j + (e.width + e.height).max(other), i, j));
            }
        }
    }
    all.into_iter().min().map(|(c, i, j)| (i, j, c))
}

#[test]
fn rounding_matches_exhaustive_search() {
    let mut rng = rng_from_seed(77);
    for case in 0..300 {
        let v = GridPoint::new(rng.gen_range(1..=7), rng.gen_range(1..=7));
        let s = rng.gen_range(0..=2);
        let salt: u64 = rng.gen();
        let with_partner = case % 2 == 0;
        // a synthetic subtree whose box depends on the primitive direction
        let measure = move |c: GridPoint| -> Option<SubtreeExtent> {
            let h = (c.x as u64 * 31 + c.y as u64 * 17) ^ salt;
            if h.is_multiple_of(7) {
                return None;
            }
            let u = fewseg_core::geometry::primitive_vector(c).unwrap();
            let scale = 1 + (h % 3) as i64;
            Some(SubtreeExtent {
                width: u.x * scale + (h % 5) as i64,
                height: u.y * scale,
                partner: with_partner.then_some((u.y + (h % 4) as i64, u.x)),
            })
        };
        let got = round_vector(v, s, measure).map(|c| {
            assert_eq!(c.vector, GridPoint::new(v.x + c.i, v.y + c.j));
            assert_eq!(c.partner_vector, -c.vector);
            (c.i, c.j, c.cost)
        });
        assert_eq!(got, brute_rounding(v, s, &measure), "case {case}: {v:?} s={s}");
    }
}

#[test]
fn zero_budget_keeps_the_vector() {
    let v = GridPoint::new(6, 11);
    let c = round_vector(v, 0, |_| {
        Some(SubtreeExtent {
            width: 3,
            height: 4,
            partner: None,
        })
    })
    .unwrap();
    assert_eq!((c.vector, c.partner_vector), (v, -v));
}

// ---- tidier -----------------------------------------------------------------

#[test]
fn tidier_levels_and_centering() {
    for (spec, t) in corpus() {
        let d = layout_tidier(t);
        let pts = grid(&d);
        let depths = t.depths();
        let mut level_y: HashMap<usize, i64> = HashMap::new();
        for v in 0..t.n() {
            let y = *level_y.entry(depths[v]).or_insert(pts[v].y);
            assert_eq!(pts[v].y, y, "{spec:?} vertex {v}");
        }
        for v in 0..t.n() {
            let kids = t.children(v);
            if kids.is_empty() {
                continue;
            }
            let lo = kids.iter().map(|&c| pts[c].x).min().unwrap();
            let hi = kids.iter().map(|&c| pts[c].x).max().unwrap();
            assert_eq!(2 * pts[v].x, lo + hi, "{spec:?} vertex {v}");
        }
    }
}

/// Ordered shape of the subtree of `v`.
fn shape(t: &RootedTree, v: usize) -> String {
    let kids: Vec<String> = t.children(v).iter().map(|&c| shape(t, c)).collect();
    format!("({})", kids.join(""))
}

/// Appends a copy of `template` below `at`, preserving child order.
fn graft(parents: &mut Vec<Option<usize>>, template: &RootedTree, at: usize) {
    let mut stack = vec![(template.root(), at)];
    while let Some((u, p)) = stack.pop() {
        let id = parents.len();
        parents.push(Some(p));
        // children are created in order, so push them reversed
        for &c in template.children(u).iter().rev() {
            stack.push((c, id));
        }
    }
}

fn random_rooted(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> RootedTree {
    if n == 1 {
        return RootedTree::singleton();
    }
    RootedTree::from_graph(&random_labeled_tree(n, rng), 0).unwrap()
}

fn tree_with_duplicates(seed: u64) -> RootedTree {
    let mut rng = rng_from_seed(seed);
    let motif = random_rooted(rng.gen_range(2..=6), &mut rng);
    let mut parents = vec![None];
    let branches: u32 = rng.gen_range(3..=5);
    for b in 0..branches {
        if b.is_multiple_of(2) {
            graft(&mut parents, &motif, 0);
        } else {
            let filler = random_rooted(rng.gen_range(1..=5), &mut rng);
            graft(&mut parents, &filler, 0);
        }
    }
    // and one copy hanging deeper in the tree
    let deep = parents.len() - 1;
    graft(&mut parents, &motif, deep);
    RootedTree::from_parents(parents).unwrap()
}

fn preorder_from(t: &RootedTree, v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        out.push(u);
        stack.extend(t.children(u).iter().rev());
    }
    out
}

#[test]
fn tidier_draws_equal_subtrees_alike() {
    for seed in 0..20 {
        let t = tree_with_duplicates(seed);
        let d = layout_tidier(&t);
        let pts = grid(&d);
        let mut by_shape: HashMap<String, Vec<usize>> = HashMap::new();
        for v in 0..t.n() {
            by_shape.entry(shape(&t, v)).or_default().push(v);
        }
        let repeated = by_shape.values().filter(|vs| vs.len() > 1 && !t.children(vs[0]).is_empty());
        let mut checked = 0;
        for vs in repeated {
            let first = preorder_from(&t, vs[0]);
            for &w in &vs[1..] {
                let other = preorder_from(&t, w);
                let shift = pts[w] - pts[vs[0]];
                for (&a, &b) in first.iter().zip(&other) {
                    assert_eq!(pts[b] - pts[a], shift, "seed {seed}: {} vs {w}", vs[0]);
                }
                checked += 1;
            }
        }
        assert!(checked > 0, "seed {seed} has no repeated subtree");
    }
}

// ---- quad -------------------------------------------------------------------

fn angle(p: GridPoint) -> f64 {
    (p.y as f64).atan2(p.x as f64).to_degrees().rem_euclid(360.0)
}

#[test]
fn quad_keeps_child_edges_apart() {
    let params = QuadParams::default();
    let mut vertices_checked = 0;
    for (spec, t) in corpus() {
        let d = layout_quad(t, params).unwrap();
        let pts = grid(&d);
        for v in 0..t.n() {
            let kids = t.children(v);
            let c = kids.len();
            if c < 2 || c as f64 * params.angular_coefficient > params.available_angle() {
                continue;
            }
            let mut dirs: Vec<f64> = kids.iter().map(|&k| angle(pts[k] - pts[v])).collect();
            dirs.sort_by(f64::total_cmp);
            let gaps = dirs
                .windows(2)
                .map(|w| w[1] - w[0])
                .chain([dirs[0] + 360.0 - dirs[c - 1]]);
            for g in gaps {
                assert!(g >= 22.5 - 1e-9, "{spec:?} vertex {v}: gap {g}");
            }
            vertices_checked += 1;
        }
    }
    assert!(vertices_checked > 100);
}

#[test]
fn quad_spreads_crowded_children_evenly() {
    let mut parents = vec![None];
    parents.extend(std::iter::repeat_n(Some(0), 17));
    let t = RootedTree::from_parents(parents).unwrap();
    let d = layout_quad(&t, QuadParams::default()).unwrap();
    let pts = grid(&d);
    let mut dirs: Vec<f64> = (1..18).map(|k| angle(pts[k] - pts[0])).collect();
    dirs.sort_by(f64::total_cmp);
    let even = 360.0 / 17.0;
    for w in dirs.windows(2) {
        assert!((w[1] - w[0] - even).abs() < 1.0, "gap {}", w[1] - w[0]);
    }
    assert!(is_planar_drawing(&d));
}
