#include "kepoly/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "kepoly/lp.hpp"

namespace kepoly::geom {

namespace {

Int lcm_int(const Int& a, const Int& b) {
    Int g, l;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    l = a / g * b;
    return l;
}

std::vector<QVec> dedupe_sorted(std::vector<QVec> pts) {
    std::sort(pts.begin(), pts.end(), QVecLess());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

QVec cross3(const QVec& a, const QVec& b) {
    return QVec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rat cross2(const QVec& o, const QVec& a, const QVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Affine dimension of a point set, together with a coordinate subset J such
// that projection onto the J-coordinates is injective on the affine hull.
int affine_structure(const std::vector<QVec>& pts, std::vector<int>& keep_coords) {
    keep_coords.clear();
    if (pts.size() <= 1) return 0;
    QMat m(static_cast<int>(pts.size()) - 1, pts[0].dim());
    for (size_t i = 1; i < pts.size(); ++i)
        for (int j = 0; j < pts[0].dim(); ++j) m.at(static_cast<int>(i) - 1, j) = pts[i][j] - pts[0][j];
    return row_reduce(m, &keep_coords);
}

QVec project_coords(const QVec& p, const std::vector<int>& coords) {
    QVec q(static_cast<int>(coords.size()));
    for (size_t k = 0; k < coords.size(); ++k) q[static_cast<int>(k)] = p[coords[k]];
    return q;
}

// ---- 1D hull -------------------------------------------------------------

void hull_1d(const std::vector<QVec>& pts, RationalPolytope& out) {
    out.vertices = {pts.front(), pts.back()};  // pts sorted, distinct
    out.halfspaces.push_back(canonical_halfspace(QVec{Rat(-1)}, -pts.front()[0]));
    out.halfspaces.push_back(canonical_halfspace(QVec{Rat(1)}, pts.back()[0]));
    out.facet_vertices = {{0}, {1}};
}

// ---- 2D hull: monotone chain ----------------------------------------------

// Returns the hull boundary in counterclockwise order starting from the
// lexicographic minimum. Input must be sorted and deduplicated.
std::vector<QVec> monotone_chain(const std::vector<QVec>& pts) {
    const size_t n = pts.size();
    std::vector<QVec> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
        while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

void hull_2d(const std::vector<QVec>& pts, RationalPolytope& out) {
    std::vector<QVec> ring = monotone_chain(pts);
    out.vertices = dedupe_sorted(ring);
    std::map<QVec, int, QVecLess> index;
    for (size_t i = 0; i < out.vertices.size(); ++i) index[out.vertices[i]] = static_cast<int>(i);

    struct Facet {
        Halfspace h;
        std::vector<int> verts;
    };
    std::vector<Facet> facets;
    for (size_t i = 0; i < ring.size(); ++i) {
        const QVec& a = ring[i];
        const QVec& b = ring[(i + 1) % ring.size()];
        QVec d = b - a;
        QVec n{d[1], -d[0]};  // outward for a counterclockwise ring
        facets.push_back({canonical_halfspace(n, dot(n, a)), {index[a], index[b]}});
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
        if (x.h.normal != y.h.normal) return lex_less(x.h.normal, y.h.normal);
        return x.h.offset < y.h.offset;
    });
    for (auto& f : facets) {
        out.halfspaces.push_back(f.h);
        out.facet_vertices.push_back(f.verts);
    }
}

// ---- 3D hull: exhaustive facet-plane enumeration ---------------------------
//
// Every facet plane is spanned by some triple of input points; we enumerate
// the (deduplicated) planes, keep those supporting the whole set, and recover
// the vertex set as the points whose tight facet normals span rank 3. Cubic in
// the input size, which is fine at the scale of Weyl orbits.

void hull_3d(const std::vector<QVec>& pts, RationalPolytope& out) {
    const int n = static_cast<int>(pts.size());
    std::set<std::pair<std::vector<Rat>, Rat>> seen;
    struct Facet {
        Halfspace h;
        std::vector<int> verts;
    };
    std::vector<Facet> facets;

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                QVec nv = cross3(pts[j] - pts[i], pts[k] - pts[i]);
                if (nv.is_zero()) continue;
                Halfspace h = canonical_halfspace(nv, dot(nv, pts[i]));
                bool above = false, below = false;
                for (int m = 0; m < n && !(above && below); ++m) {
                    int s = sgn(h.slack(pts[m]));
                    if (s < 0) above = true;
                    if (s > 0) below = true;
                }
                if (above && below) continue;
                if (above) h = canonical_halfspace(-h.normal, -h.offset);
                if (!seen.insert({h.normal.c, h.offset}).second) continue;
                facets.push_back({h, {}});
            }

    // Vertices: points whose tight facet normals span all of Q^3.
    std::vector<int> vertex_of(static_cast<size_t>(n), -1);
    for (int m = 0; m < n; ++m) {
        std::vector<const QVec*> tight;
        for (const auto& f : facets)
            if (f.h.slack(pts[m]) == 0) tight.push_back(&f.h.normal);
        if (tight.size() < 3) continue;
        QMat mat(static_cast<int>(tight.size()), 3);
        for (size_t t = 0; t < tight.size(); ++t)
            for (int c = 0; c < 3; ++c) mat.at(static_cast<int>(t), c) = (*tight[t])[c];
        if (rank_of(mat) == 3) vertex_of[static_cast<size_t>(m)] = 0;
    }
    for (int m = 0; m < n; ++m)
        if (vertex_of[static_cast<size_t>(m)] >= 0) out.vertices.push_back(pts[m]);
    out.vertices = dedupe_sorted(out.vertices);
    std::map<QVec, int, QVecLess> index;
    for (size_t i = 0; i < out.vertices.size(); ++i) index[out.vertices[i]] = static_cast<int>(i);

    // Facet rings: 2D hull of the tight vertices in projected coordinates.
    for (auto& f : facets) {
        std::vector<QVec> tight;
        for (const QVec& v : out.vertices)
            if (f.h.slack(v) == 0) tight.push_back(v);
        int pivot = 0;
        while (f.h.normal[pivot] == 0) ++pivot;
        std::vector<int> keep;
        for (int c = 0; c < 3; ++c)
            if (c != pivot) keep.push_back(c);
        std::map<QVec, QVec, QVecLess> lift;
        std::vector<QVec> proj;
        for (const QVec& v : tight) {
            QVec q = project_coords(v, keep);
            lift[q] = v;
            proj.push_back(q);
        }
        proj = dedupe_sorted(proj);
        std::vector<QVec> ring = proj.size() >= 3 ? monotone_chain(proj) : proj;
        for (const QVec& q : ring) f.verts.push_back(index[lift[q]]);
    }

    std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
        if (x.h.normal != y.h.normal) return lex_less(x.h.normal, y.h.normal);
        return x.h.offset < y.h.offset;
    });
    for (auto& f : facets) {
        out.halfspaces.push_back(f.h);
        out.facet_vertices.push_back(f.verts);
    }
}

// ---- generic-dimension vertex pruning (no H-rep) ---------------------------

void hull_vrep_only(const std::vector<QVec>& pts, RationalPolytope& out) {
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<QVec> others;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!lp::member_vrep(others, {}, pts[i])) out.vertices.push_back(pts[i]);
    }
    out.vertices = dedupe_sorted(out.vertices);
}

void validate_hrep(const RationalPolytope& P) {
    for (const QVec& v : P.vertices)
        for (const Halfspace& h : P.halfspaces)
            if (h.slack(v) < 0)
                throw std::logic_error("convex_hull: vertex violates computed halfspace");
    for (size_t f = 0; f < P.halfspaces.size(); ++f) {
        // Each facet must be tight on affinely independent vertices spanning
        // dimension dim-1.
        const auto& ids = P.facet_vertices[f];
        if (ids.empty()) throw std::logic_error("convex_hull: facet with no tight vertices");
        QMat m(static_cast<int>(ids.size()) - 1, P.dim);
        for (size_t i = 1; i < ids.size(); ++i)
            for (int j = 0; j < P.dim; ++j)
                m.at(static_cast<int>(i) - 1, j) =
                    P.vertices[static_cast<size_t>(ids[i])][j] -
                    P.vertices[static_cast<size_t>(ids[0])][j];
        if (row_reduce(m) != P.dim - 1)
            throw std::logic_error("convex_hull: facet is not (dim-1)-dimensional");
    }
}

}  // namespace

Halfspace canonical_halfspace(QVec normal, Rat offset) {
    if (normal.is_zero()) throw std::invalid_argument("halfspace with zero normal");
    Int l = 1;
    for (const Rat& x : normal.c) l = lcm_int(l, x.get_den());
    Int g = 0;
    for (Rat& x : normal.c) {
        x *= Rat(l);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
    }
    offset *= Rat(l);
    Rat ginv = Rat(1) / Rat(g);
    for (Rat& x : normal.c) x *= ginv;
    offset *= ginv;
    return Halfspace{normal, offset};
}

Rat Simplex::abs_det() const {
    const int d = dim();
    QMat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = vertices[static_cast<size_t>(i) + 1][j] - vertices[0][j];
    Rat dd = det(m);
    return dd < 0 ? -dd : dd;
}

bool RationalPolytope::contains(const QVec& p, bool strict) const {
    if (has_hrep) {
        for (const Halfspace& h : halfspaces) {
            Rat s = h.slack(p);
            if (s < 0 || (strict && s == 0)) return false;
        }
        return true;
    }
    if (strict)
        throw std::invalid_argument(
            "contains(strict): interior queries need an H-representation (dim <= 3, full-dim)");
    return lp::member_vrep(vertices, {}, p);
}

bool RationalPolyhedron::contains(const QVec& p, bool strict) const {
    if (has_hrep) {
        for (const Halfspace& h : halfspaces) {
            Rat s = h.slack(p);
            if (s < 0 || (strict && s == 0)) return false;
        }
        return true;
    }
    if (strict)
        throw std::invalid_argument(
            "contains(strict): interior queries need an H-representation (dim <= 3, full-dim)");
    return lp::member_vrep(generators, rays, p);
}

RationalPolytope convex_hull(const std::vector<QVec>& points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: no points");
    const int dim = points[0].dim();
    for (const QVec& p : points)
        if (p.dim() != dim) throw std::invalid_argument("convex_hull: mixed dimensions");

    RationalPolytope out;
    out.dim = dim;
    std::vector<QVec> pts = dedupe_sorted(points);

    std::vector<int> keep;
    out.affine_dim = affine_structure(pts, keep);
    out.full_dim = (out.affine_dim == dim);

    if (!out.full_dim) {
        // Flagged lower-dimensional hull: minimal vertex set via the injective
        // coordinate projection, no H-representation.
        if (out.affine_dim == 0) {
            out.vertices = {pts[0]};
            return out;
        }
        std::map<QVec, QVec, QVecLess> lift;
        std::vector<QVec> proj;
        for (const QVec& p : pts) {
            QVec q = project_coords(p, keep);
            lift[q] = p;
            proj.push_back(q);
        }
        RationalPolytope sub = convex_hull(proj);
        for (const QVec& q : sub.vertices) out.vertices.push_back(lift[q]);
        out.vertices = dedupe_sorted(out.vertices);
        return out;
    }

    if (dim == 1)
        hull_1d(pts, out);
    else if (dim == 2)
        hull_2d(pts, out);
    else if (dim == 3)
        hull_3d(pts, out);
    else {
        hull_vrep_only(pts, out);
        return out;  // documented limitation: no exact H-rep beyond dim 3
    }
    out.has_hrep = true;
    validate_hrep(out);
    return out;
}

RationalPolytope scale(const RationalPolytope& P, const Rat& lambda) {
    if (lambda <= 0) throw std::invalid_argument("scale: factor must be positive");
    std::vector<QVec> v;
    for (const QVec& p : P.vertices) v.push_back(lambda * p);
    return convex_hull(v);
}

RationalPolytope clip(const RationalPolytope& P, const Halfspace& h) {
    if (!P.has_hrep) throw std::invalid_argument("clip: exact clipping needs an H-representation");
    std::vector<QVec> pts;
    for (const QVec& v : P.vertices)
        if (h.slack(v) >= 0) pts.push_back(v);

    // Crossing points on edges. In 2D the facets are the edges; in 3D edges
    // are consecutive pairs along facet rings.
    std::set<std::pair<int, int>> edges;
    if (P.dim == 1) {
        edges.insert({0, static_cast<int>(P.vertices.size()) - 1});
    } else {
        for (const auto& ring : P.facet_vertices) {
            if (P.dim == 2) {
                edges.insert({std::min(ring[0], ring[1]), std::max(ring[0], ring[1])});
            } else {
                for (size_t i = 0; i < ring.size(); ++i) {
                    int a = ring[i], b = ring[(i + 1) % ring.size()];
                    edges.insert({std::min(a, b), std::max(a, b)});
                }
            }
        }
    }
    for (auto [ia, ib] : edges) {
        const QVec& a = P.vertices[static_cast<size_t>(ia)];
        const QVec& b = P.vertices[static_cast<size_t>(ib)];
        Rat sa = h.slack(a), sb = h.slack(b);
        if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0)) {
            Rat t = sa / (sa - sb);
            pts.push_back(a + t * (b - a));
        }
    }
    if (pts.empty()) throw std::invalid_argument("clip: empty intersection");
    return convex_hull(pts);
}

RationalPolytope intersect_with_chamber(const roots::RootSystem& rs, const RationalPolytope& P) {
    if (!P.full_dim)
        throw std::invalid_argument("intersect_with_chamber: polytope must be full-dimensional");
    if (P.dim != rs.rank)
        throw std::invalid_argument("intersect_with_chamber: dimension mismatch with root system");
    RationalPolytope cur = P;
    for (const QVec& alpha : rs.simple_roots) {
        // <alpha, x> >= 0 in pairing terms is <-G alpha, x> <= 0 as a covector.
        Halfspace wall = canonical_halfspace(-rs.pairing_form(alpha), Rat(0));
        bool empty = false;
        try {
            cur = clip(cur, wall);
        } catch (const std::invalid_argument&) {
            empty = true;
        }
        if (empty)
            throw std::invalid_argument(
                "intersect_with_chamber: polytope does not meet the closed chamber");
        if (!cur.full_dim)
            throw std::invalid_argument(
                "intersect_with_chamber: intersection with the chamber is lower-dimensional");
    }
    return cur;
}

std::vector<Simplex> triangulate_from(const RationalPolytope& P, int base_vertex) {
    if (!P.full_dim || !P.has_hrep)
        throw std::invalid_argument(
            "triangulate: full-dimensional polytope with H-representation required (dim <= 3)");
    if (base_vertex < 0 || base_vertex >= static_cast<int>(P.vertices.size()))
        throw std::invalid_argument("triangulate: base vertex out of range");
    const QVec& apex = P.vertices[static_cast<size_t>(base_vertex)];
    std::vector<Simplex> out;
    if (P.dim == 1) {
        out.push_back(Simplex{{P.vertices[0], P.vertices[1]}});
        return out;
    }
    for (size_t f = 0; f < P.halfspaces.size(); ++f) {
        if (P.halfspaces[f].slack(apex) == 0) continue;  // facet contains the apex
        const auto& ring = P.facet_vertices[f];
        if (P.dim == 2) {
            out.push_back(Simplex{{apex, P.vertices[static_cast<size_t>(ring[0])],
                                   P.vertices[static_cast<size_t>(ring[1])]}});
        } else {
            // Pull the facet from its own smallest vertex.
            size_t lo = 0;
            for (size_t i = 1; i < ring.size(); ++i)
                if (ring[i] < ring[static_cast<int>(lo)]) lo = i;
            const size_t k = ring.size();
            for (size_t i = 0; i < k; ++i) {
                size_t a = (lo + i) % k, b = (lo + i + 1) % k;
                if (a == lo || b == lo) continue;
                out.push_back(Simplex{{apex, P.vertices[static_cast<size_t>(ring[lo])],
                                       P.vertices[static_cast<size_t>(ring[a])],
                                       P.vertices[static_cast<size_t>(ring[b])]}});
            }
        }
    }
    // Degenerate pieces cannot appear: each facet avoids the apex.
    for (const Simplex& s : out)
        if (s.abs_det() == 0) throw std::logic_error("triangulate: degenerate simplex produced");
    return out;
}

std::vector<Simplex> triangulate(const RationalPolytope& P) { return triangulate_from(P, 0); }

Rat volume(const RationalPolytope& P) {
    std::vector<Simplex> tri = triangulate(P);
    Rat v = 0;
    Int fact = 1;
    for (int i = 2; i <= P.dim; ++i) fact *= i;
    for (const Simplex& s : tri) v += s.abs_det();
    return v / Rat(fact);
}

namespace {

bool valid_on_rays(const QVec& n, const std::vector<QVec>& rays) {
    for (const QVec& d : rays)
        if (dot(n, d) > 0) return false;
    return true;
}

Rat support_value(const QVec& n, const std::vector<QVec>& verts) {
    Rat best = dot(n, verts[0]);
    for (size_t i = 1; i < verts.size(); ++i) {
        Rat v = dot(n, verts[i]);
        if (v > best) best = v;
    }
    return best;
}

// A valid supporting halfspace is a facet iff its tight vertices and tight
// rays together span an affine space of dimension dim-1.
bool is_facet(const Halfspace& h, const std::vector<QVec>& verts, const std::vector<QVec>& rays,
              int dim) {
    std::vector<QVec> tight_v;
    for (const QVec& v : verts)
        if (h.slack(v) == 0) tight_v.push_back(v);
    if (tight_v.empty()) return false;
    std::vector<QVec> rows;
    for (size_t i = 1; i < tight_v.size(); ++i) rows.push_back(tight_v[i] - tight_v[0]);
    for (const QVec& d : rays)
        if (dot(h.normal, d) == 0) rows.push_back(d);
    if (dim == 1) return true;
    if (rows.empty()) return dim - 1 == 0;
    QMat m(static_cast<int>(rows.size()), dim);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < dim; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    return row_reduce(m) == dim - 1;
}

}  // namespace

RationalPolyhedron minkowski_with_negative_root_cone(const roots::RootSystem& rs,
                                                     const RationalPolytope& Pplus) {
    if (Pplus.vertices.empty()) throw std::invalid_argument("minkowski: empty polytope");
    if (Pplus.dim != rs.rank) throw std::invalid_argument("minkowski: dimension mismatch");

    RationalPolyhedron Q;
    Q.dim = Pplus.dim;
    Q.generators = Pplus.vertices;
    for (const QVec& alpha : rs.simple_roots) Q.rays.push_back(-alpha);

    // The halfspace-only representation needs Q full-dimensional; otherwise
    // (and beyond dim 3) queries fall back to exact LP over the V-rep.
    bool q_full_dim = false;
    {
        std::vector<QVec> rows;
        for (size_t i = 1; i < Q.generators.size(); ++i) rows.push_back(Q.generators[i] - Q.generators[0]);
        for (const QVec& d : Q.rays) rows.push_back(d);
        if (rows.empty()) {
            q_full_dim = (Q.dim == 0);
        } else {
            QMat m(static_cast<int>(rows.size()), Q.dim);
            for (size_t i = 0; i < rows.size(); ++i)
                for (int j = 0; j < Q.dim; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
            q_full_dim = (row_reduce(m) == Q.dim);
        }
    }
    if (Q.dim > 3 || !q_full_dim) {
        Q.has_hrep = false;
        return Q;
    }

    // Candidate facet normals: facet normals of P^+ (when the polytope has an
    // H-rep), normals vanishing on cone faces, and in 3D the mixed edge x ray
    // directions. Validity on every ray plus support on P^+ makes a halfspace
    // that contains Q; completeness follows from the face decomposition of a
    // Minkowski sum. Non-facets are pruned afterwards.
    std::vector<QVec> candidates;
    for (const Halfspace& h : Pplus.halfspaces) candidates.push_back(h.normal);
    if (Q.dim == 1) {
        candidates.push_back(QVec{Rat(1)});
        candidates.push_back(QVec{Rat(-1)});
    } else if (Q.dim == 2) {
        for (const QVec& d : Q.rays) {
            candidates.push_back(QVec{d[1], -d[0]});
            candidates.push_back(QVec{-d[1], d[0]});
        }
        if (!Pplus.has_hrep && Pplus.affine_dim <= 1 && Pplus.vertices.size() == 2) {
            QVec e = Pplus.vertices[1] - Pplus.vertices[0];
            candidates.push_back(QVec{e[1], -e[0]});
            candidates.push_back(QVec{-e[1], e[0]});
        }
    } else {
        for (size_t i = 0; i < Q.rays.size(); ++i)
            for (size_t j = i + 1; j < Q.rays.size(); ++j) {
                QVec n = cross3(Q.rays[i], Q.rays[j]);
                if (!n.is_zero()) {
                    candidates.push_back(n);
                    candidates.push_back(-n);
                }
            }
        std::set<std::pair<int, int>> edges;
        if (Pplus.has_hrep) {
            for (const auto& ring : Pplus.facet_vertices)
                for (size_t i = 0; i < ring.size(); ++i) {
                    int a = ring[i], b = ring[(i + 1) % ring.size()];
                    edges.insert({std::min(a, b), std::max(a, b)});
                }
        } else {
            // Degenerate base polytope: all vertex pairs as edge candidates,
            // and affine-plane normals from vertex triples.
            const auto& vs = Pplus.vertices;
            for (int a = 0; a < static_cast<int>(vs.size()); ++a)
                for (int b = a + 1; b < static_cast<int>(vs.size()); ++b)
                    edges.insert({a, b});
            for (size_t a = 0; a < vs.size(); ++a)
                for (size_t b = a + 1; b < vs.size(); ++b)
                    for (size_t c = b + 1; c < vs.size(); ++c) {
                        QVec n = cross3(vs[b] - vs[a], vs[c] - vs[a]);
                        if (!n.is_zero()) {
                            candidates.push_back(n);
                            candidates.push_back(-n);
                        }
                    }
        }
        for (auto [a, b] : edges) {
            QVec e = Pplus.vertices[static_cast<size_t>(b)] - Pplus.vertices[static_cast<size_t>(a)];
            for (const QVec& d : Q.rays) {
                QVec n = cross3(e, d);
                if (!n.is_zero()) {
                    candidates.push_back(n);
                    candidates.push_back(-n);
                }
            }
        }
    }

    std::set<std::pair<std::vector<Rat>, Rat>> seen;
    for (const QVec& nraw : candidates) {
        if (nraw.is_zero() || !valid_on_rays(nraw, Q.rays)) continue;
        Halfspace h = canonical_halfspace(nraw, support_value(nraw, Q.generators));
        if (!seen.insert({h.normal.c, h.offset}).second) continue;
        if (is_facet(h, Q.generators, Q.rays, Q.dim)) Q.halfspaces.push_back(h);
    }
    std::sort(Q.halfspaces.begin(), Q.halfspaces.end(), [](const Halfspace& x, const Halfspace& y) {
        if (x.normal != y.normal) return lex_less(x.normal, y.normal);
        return x.offset < y.offset;
    });
    Q.has_hrep = true;

    for (const QVec& v : Q.generators)
        if (!Q.contains(v))
            throw std::logic_error("minkowski: generator vertex escaped the computed H-rep");
    return Q;
}

RayExit ray_exit(const RationalPolyhedron& Q, const QVec& origin, const QVec& dir) {
    if (dir.is_zero()) throw std::invalid_argument("ray_exit: zero direction");
    if (Q.has_hrep) {
        for (const Halfspace& h : Q.halfspaces)
            if (h.slack(origin) < 0)
                throw std::invalid_argument("ray_exit: origin violates halfspace <" +
                                            to_string(h.normal) +
                                            ", x> <= " + rat_to_string(h.offset));
        bool found = false;
        Rat best;
        for (const Halfspace& h : Q.halfspaces) {
            Rat dn = dot(h.normal, dir);
            if (dn <= 0) continue;
            Rat s = h.slack(origin) / dn;
            if (!found || s < best) {
                best = s;
                found = true;
            }
        }
        if (!found) return {true, Rat(0)};
        return {false, best};
    }
    auto s = lp::ray_exit_vrep(Q.generators, Q.rays, origin, dir);
    if (!s) return {true, Rat(0)};
    return {false, *s};
}

}  // namespace kepoly::geom
