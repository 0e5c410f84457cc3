#include "bers/mlt.hpp"

#include <set>

#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"
#include "bers/regions.hpp"

namespace bers {

bool same_lamination(const StableLamination& a, const StableLamination& b,
                     double tol) {
  return projective_gap(a.weights, b.weights) <= tol;
}

namespace {

struct RemovalRecord {
  std::vector<Weights> frontier;       // walls of the removed region
  std::vector<int> inside_punctures;   // punctures swallowed
  std::vector<Weights> outside_curves; // system curves outside at removal time
  std::vector<int> outside_punctures;
};

bool contains_weights(const std::vector<Weights>& v, const Weights& w) {
  for (const auto& x : v)
    if (x == w) return true;
  return false;
}

// region ids of cc lying inside the removed record: not reachable from the
// outside markers without crossing the record's walls
std::vector<char> inside_mask(const CutComplex& cc, const RemovalRecord& rec) {
  int nr = cc.num_regions();
  std::vector<char> outside(nr, 0);
  std::vector<int> stack;
  auto mark = [&](int r) {
    if (r >= 0 && !outside[r]) {
      outside[r] = 1;
      stack.push_back(r);
    }
  };
  for (int p : rec.outside_punctures) mark(cc.region_of_puncture(p));
  for (size_t k = 0; k < cc.system().size(); ++k)
    if (contains_weights(rec.outside_curves, cc.system()[k].w)) {
      mark(cc.sides_of(static_cast<int>(k)).first);
      mark(cc.sides_of(static_cast<int>(k)).second);
    }
  while (!stack.empty()) {
    int r = stack.back();
    stack.pop_back();
    for (size_t k = 0; k < cc.system().size(); ++k) {
      if (contains_weights(rec.frontier, cc.system()[k].w)) continue;
      auto [l, rr] = cc.sides_of(static_cast<int>(k));
      if (l == r) mark(rr);
      if (rr == r) mark(l);
    }
  }
  std::vector<char> inside(nr, 0);
  for (int r = 0; r < nr; ++r) inside[r] = !outside[r];
  for (int p : rec.inside_punctures)
    require(inside[cc.region_of_puncture(p)], errc::bad_input,
            "removal bookkeeping lost a region");
  return inside;
}

// curve disjointness against a layer component
bool curve_disjoint_from(const CurveClass& x, const LayerComponent& comp,
                         TriPtr T) {
  switch (comp.kind) {
    case LayerComponent::Kind::closed_curve:
      if (x.w == comp.curve->w) return false;
      return intersection_number(x, *comp.curve) == 0;
    case LayerComponent::Kind::irrational:
      require(comp.approx.size() > 0, errc::bad_input,
              "irrational component lacks its approximant");
      return intersection_number(T, x.w, comp.approx) == 0 &&
             intersection_number(T, x.w, comp.approx2) == 0;
    case LayerComponent::Kind::arc:
      if (x.w == comp.host->system()[comp.arc->curve_a].w ||
          x.w == comp.host->system()[comp.arc->curve_b].w)
        return false;
      return arc_curve_relation(*comp.host, *comp.arc, x, 24) ==
             ArcCurveRelation::disjoint;
  }
  return false;
}

}  // namespace

MltResult multi_layered_limit(const TeichSequence& seq, const MltConfig& cfg) {
  TriPtr T = seq.base.tri;
  int max_layers = cfg.max_layers > 0 ? cfg.max_layers : T->surface().xi();

  MltResult out;
  out.surfaces.push_back({T->surface()});

  std::vector<CurveClass> cut_system;
  std::vector<RemovalRecord> removals;

  for (int layer = 1; layer <= max_layers + 1; ++layer) {
    require(layer <= max_layers, errc::inconclusive_layer,
            "layer count exceeded the Euler bound without termination");
    auto cc = std::make_shared<CutComplex>(T, cut_system);
    // active regions
    std::vector<char> active(cc->num_regions(), 1);
    for (const auto& rec : removals) {
      auto inside = inside_mask(*cc, rec);
      for (int r = 0; r < cc->num_regions(); ++r)
        if (inside[r]) active[r] = 0;
    }

    // detect per active region
    struct PieceReport {
      int region;
      ProjectiveLimitReport rep;
      CandidateSet cand;
    };
    std::vector<PieceReport> reports;
    bool all_bounded = true;
    for (int r = 0; r < cc->num_regions(); ++r) {
      if (!active[r]) continue;
      CandidateSet cand;
      if (cut_system.empty()) {
        cand = candidate_curves(T, cfg.candidate_budget);
      } else {
        const auto& R = cc->region(r);
        if (R.sig.is_annulus()) continue;  // no essential candidates
        try {
          cand = candidate_curves(cc, r, cfg.candidate_budget,
                                  cfg.piece_curve_cap, cfg.arc_gate_budget);
        } catch (const error& e) {
          if (e.code() == errc::empty_piece) continue;
          throw;
        }
      }
      ProjectiveLimitReport rep = thurston_limit(seq, cand, cfg.limit);
      if (rep.verdict == Verdict::inconclusive)
        fail(errc::inconclusive_layer,
             "detection inconclusive on a piece at layer " +
                 std::to_string(layer) + ": " + rep.note);
      if (rep.verdict == Verdict::converges) all_bounded = false;
      reports.push_back({r, std::move(rep), std::move(cand)});
    }

    if (all_bounded) {
      std::vector<SurfaceType> finals;
      for (const auto& pr : reports) finals.push_back(cc->region(pr.region).sig);
      out.final_pieces = finals;
      break;
    }

    // assemble the layer
    MltLayer L;
    int q = 0, rsub = 0;
    for (const auto& pr : reports) {
      if (pr.rep.verdict != Verdict::converges) continue;
      if (q == 0) {
        q = pr.rep.subsequence_q;
        rsub = pr.rep.subsequence_r;
      }
      require(pr.rep.subsequence_q == q && pr.rep.subsequence_r == rsub,
              errc::inconclusive_layer,
              "pieces converged along incompatible subsequences");
      L.pieces.push_back(cc->region(pr.region).sig);
      const LimitClass& lim = *pr.rep.limit;
      for (const auto& [c, w] : lim.curve_parts) {
        LayerComponent comp;
        comp.kind = LayerComponent::Kind::closed_curve;
        comp.curve = c;
        comp.layer = layer;
        L.components.push_back(std::move(comp));
      }
      for (const auto& lam : lim.lamination_parts) {
        LayerComponent comp;
        comp.kind = LayerComponent::Kind::irrational;
        comp.lamination = lam;
        comp.layer = layer;
        L.components.push_back(std::move(comp));
      }
      if (lim.arc_part) {
        LayerComponent comp;
        comp.kind = LayerComponent::Kind::arc;
        comp.arc = lim.arc_part;
        comp.host = pr.cand.complex;
        comp.layer = layer;
        L.components.push_back(std::move(comp));
      }
    }
    L.subsequence_q = q;
    L.subsequence_r = rsub;

    // supports of irrational components
    for (auto& comp : L.components) {
      if (comp.kind != LayerComponent::Kind::irrational) continue;
      const StableLamination& lam = *comp.lamination;
      require(lam.cls != nullptr, errc::bad_input, "lamination lost its class");
      // integral approximant from a seed the class actually moves
      Weights ap;
      for (const auto& seed : candidate_curves(T, 8).curves) {
        if (lam.cls->apply(seed.w) == seed.w) continue;
        ap = seed.w;
        break;
      }
      require(ap.size() > 0, errc::bad_input, "no moving seed for the class");
      for (int k = 0; k < 24; ++k) {
        Weights nx = lam.cls->apply(ap);
        if (nx.cwiseAbs().maxCoeff() > (std::int64_t(1) << 38)) break;
        ap = nx;
        if (projective_gap(ap.cast<double>(), lam.weights) < 1e-7) break;
      }
      Weights ap2 = lam.cls->apply(ap);
      comp.approx = ap;
      comp.approx2 = ap2;
      auto apc = canonicalize(T, ap);
      require(apc.ok(), errc::bad_input, "approximant failed to canonicalize");
      auto sup = minimal_support(
          T, *apc.curve,
          [&](const CurveClass& c) {
            return intersection_number(T, c.w, ap) == 0 &&
                   intersection_number(T, c.w, ap2) == 0;
          },
          cfg.piece_curve_cap);
      comp.support_sig = sup.sig;
      comp.support_frontier = sup.frontier;
      // removal record
      RemovalRecord rec;
      for (const auto& f : sup.frontier) rec.frontier.push_back(f.w);
      rec.inside_punctures = sup.punctures;
      for (int v = 0; v < T->num_vertices(); ++v)
        if (std::find(sup.punctures.begin(), sup.punctures.end(), v) ==
            sup.punctures.end())
          rec.outside_punctures.push_back(v);
      for (const auto& c : cut_system)
        if (!contains_weights(rec.frontier, c.w))
          rec.outside_curves.push_back(c.w);
      removals.push_back(std::move(rec));
      for (const auto& f : sup.frontier)
        if (!contains_weights({}, f.w)) {
          bool present = false;
          for (const auto& c : cut_system)
            if (c.w == f.w) present = true;
          if (!present) cut_system.push_back(f);
        }
    }

    // closed leaves: cut unless on the frontier of another component's
    // supporting surface
    for (auto& comp : L.components) {
      if (comp.kind != LayerComponent::Kind::closed_curve) continue;
      bool on_frontier = false;
      for (const auto& other : L.components) {
        if (&other == &comp) continue;
        for (const auto& f : other.support_frontier)
          if (f.w == comp.curve->w) on_frontier = true;
      }
      if (on_frontier) continue;
      bool present = false;
      for (const auto& c : cut_system)
        if (c.w == comp.curve->w) present = true;
      if (!present) cut_system.push_back(*comp.curve);
    }

    // arcs: remove their minimal supporting surfaces
    for (auto& comp : L.components) {
      if (comp.kind != LayerComponent::Kind::arc) continue;
      const ArcClass& alpha = *comp.arc;
      const CutComplex& host = *comp.host;
      // eligible wall curves: disjoint from every component of this layer
      std::vector<CurveClass> family;
      for (const auto& x : enumerate_curves(T, cfg.piece_curve_cap)) {
        bool ok = true;
        for (const auto& other : L.components)
          if (!curve_disjoint_from(x, other, T)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        bool dup = false;
        for (const auto& f : family)
          if (f.w == x.w || intersection_number(f, x) != 0) {
            dup = true;
            break;
          }
        for (const auto& c : cut_system)
          if (c.w == x.w || intersection_number(c, x) != 0) dup = true;
        if (!dup) family.push_back(x);
      }
      // refined complex: old system + the new walls
      std::vector<CurveClass> refined = cut_system;
      for (const auto& f : family) refined.push_back(f);
      CutComplex ccr(T, refined);
      // locate the support region through the arc's attachment crossing
      const TraceComponent& A = host.component(alpha.curve_a);
      auto [e0, pos0] = A.crossings[alpha.gate_a];
      const Weights& aw = host.system()[alpha.curve_a].w;
      // ordinal of this crossing among the attachment curve's own crossings
      int ordinal = 0;
      for (const auto& [e, p] : A.crossings)
        if (e == e0 && p < pos0) ++ordinal;
      // position of that crossing in the refined union
      int hit = -1;
      {
        int count = 0;
        std::int64_t strands = ccr.strands(e0);
        for (std::int64_t p = 0; p < strands; ++p) {
          int owner = ccr.crossing_owner(e0, p);
          if (ccr.system()[owner].w == aw) {
            if (count == ordinal) {
              hit = static_cast<int>(p);
              break;
            }
            ++count;
          }
        }
      }
      require(hit >= 0, errc::bad_input, "lost the arc attachment crossing");
      // the support is the refined region on the arc's own side of its
      // attachment crossing
      const auto& en = T->ends(e0)[0];
      int region_sup = ccr.cell_region(ccr.interval_cell(
          en.tri, en.side, hit + (alpha.start_above ? 1 : 0)));
      const auto& Rsup = ccr.region(region_sup);
      comp.support_sig = Rsup.sig;
      std::set<int> wall_idx;
      for (auto [k, mult] : Rsup.frontier) wall_idx.insert(k);
      for (int k : wall_idx) comp.support_frontier.push_back(ccr.system()[k]);
      // frontier rel the piece: drop walls already in the old system
      for (const auto& f : comp.support_frontier) {
        bool old = false;
        for (const auto& c : cut_system)
          if (c.w == f.w) old = true;
        if (!old) comp.extended_frontier.push_back(f);
      }
      // removal record + system growth
      RemovalRecord rec;
      for (const auto& f : comp.support_frontier) rec.frontier.push_back(f.w);
      rec.inside_punctures = Rsup.punctures;
      for (int v = 0; v < T->num_vertices(); ++v)
        if (std::find(Rsup.punctures.begin(), Rsup.punctures.end(), v) ==
            Rsup.punctures.end())
          rec.outside_punctures.push_back(v);
      for (const auto& c : cut_system)
        if (!contains_weights(rec.frontier, c.w))
          rec.outside_curves.push_back(c.w);
      removals.push_back(std::move(rec));
      for (const auto& f : comp.extended_frontier) {
        bool present = false;
        for (const auto& c : cut_system)
          if (c.w == f.w) present = true;
        if (!present) cut_system.push_back(f);
      }
    }

    out.layers.push_back(std::move(L));
    // record the next surface list
    CutComplex next(T, cut_system);
    std::vector<SurfaceType> sigs;
    std::vector<char> next_active(next.num_regions(), 1);
    for (const auto& rec : removals) {
      auto inside = inside_mask(next, rec);
      for (int r = 0; r < next.num_regions(); ++r)
        if (inside[r]) next_active[r] = 0;
    }
    for (int r = 0; r < next.num_regions(); ++r)
      if (next_active[r]) sigs.push_back(next.region(r).sig);
    out.surfaces.push_back(sigs);
  }

  out.core = core_union(out);
  out.intermediate = intermediate_union(out);
  out.extended = extended_union(out);
  return out;
}

namespace {

void add_curve(MltResult::UnionSet& u, const CurveClass& c) {
  for (const auto& x : u.curves)
    if (x.w == c.w) return;
  u.curves.push_back(c);
}

void add_lamination(MltResult::UnionSet& u, const StableLamination& l) {
  for (const auto& x : u.laminations)
    if (same_lamination(x, l, 1e-7)) return;
  u.laminations.push_back(l);
}

}  // namespace

MltResult::UnionSet core_union(const MltResult& r) {
  MltResult::UnionSet u;
  for (const auto& L : r.layers)
    for (const auto& comp : L.components) {
      if (comp.kind == LayerComponent::Kind::closed_curve)
        add_curve(u, *comp.curve);
      else if (comp.kind == LayerComponent::Kind::irrational)
        add_lamination(u, *comp.lamination);
    }
  return u;
}

MltResult::UnionSet intermediate_union(const MltResult& r) {
  MltResult::UnionSet u = core_union(r);
  for (const auto& L : r.layers)
    for (const auto& comp : L.components)
      if (comp.kind == LayerComponent::Kind::irrational)
        for (const auto& f : comp.support_frontier) add_curve(u, f);
  return u;
}

MltResult::UnionSet extended_union(const MltResult& r) {
  MltResult::UnionSet u = intermediate_union(r);
  for (const auto& L : r.layers)
    for (const auto& comp : L.components) {
      if (comp.kind != LayerComponent::Kind::arc) continue;
      for (const auto& f : comp.extended_frontier) {
        // keep only frontier curves disjoint from every layer component
        bool disjoint_all = true;
        for (const auto& L2 : r.layers)
          for (const auto& other : L2.components)
            if (!curve_disjoint_from(f, other, f.tri)) disjoint_all = false;
        if (disjoint_all) add_curve(u, f);
      }
    }
  return u;
}

SandwichVerdict sandwich_check(const MltResult& r, const EndInvariant& target) {
  SandwichVerdict v;
  auto inter = intermediate_union(r);
  auto ext = extended_union(r);
  v.lower_ok = true;
  for (const auto& c : inter.curves) {
    bool found = false;
    for (const auto& p : target.parabolics)
      if (p.w == c.w) found = true;
    if (!found) {
      v.lower_ok = false;
      v.lower_witnesses.push_back("curve missing from target parabolics");
    }
  }
  for (const auto& l : inter.laminations) {
    bool found = false;
    for (const auto& e : target.endings)
      if (same_lamination(e.lamination, l, 1e-7)) found = true;
    if (!found) {
      v.lower_ok = false;
      v.lower_witnesses.push_back("lamination missing from target endings");
    }
  }
  v.upper_ok = true;
  for (const auto& p : target.parabolics) {
    bool found = false;
    for (const auto& c : ext.curves)
      if (p.w == c.w) found = true;
    if (!found) {
      v.upper_ok = false;
      v.upper_witnesses.push_back("target parabolic outside the extended union");
    }
  }
  for (const auto& e : target.endings) {
    bool found = false;
    for (const auto& l : ext.laminations)
      if (same_lamination(e.lamination, l, 1e-7)) found = true;
    if (!found) {
      v.upper_ok = false;
      v.upper_witnesses.push_back("target ending outside the extended union");
    }
  }
  return v;
}

}  // namespace bers
