#include <algorithm>
#include <map>
#include <memory>

#include "engines.hpp"
#include "mdsarray/error.hpp"
#include "mdsarray/grsa/group_system.hpp"

namespace mdsarray::detail {

namespace {

// Subsets of `from` with at most `t` elements, smallest first.
std::vector<std::vector<int>> small_subsets(const std::vector<int>& from, int t) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> layer{{}};
  std::vector<std::size_t> last{0};
  for (int size = 1; size <= t; ++size) {
    std::vector<std::vector<int>> next;
    std::vector<std::size_t> next_last;
    for (std::size_t s = 0; s < layer.size(); ++s) {
      for (std::size_t x = last[s]; x < from.size(); ++x) {
        auto sub = layer[s];
        sub.push_back(from[x]);
        next.push_back(sub);
        next_last.push_back(x + 1);
      }
    }
    layer = std::move(next);
    last = std::move(next_last);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Erasure decoding of the code obtained by restricting every column to the
// coordinates whose digit `failed` is a multiple of s_i, after eliminating
// the failed column from every parity equation.
class ProjectedCode {
 public:
  ProjectedCode(const CodeSpec& spec, const std::vector<StructuredOp>& ops, int failed, std::uint32_t si)
      : spec_(spec), ops_(ops), failed_(failed), si_(si),
        families_(static_cast<std::size_t>(spec.r) - si) {}

  bool in_view(std::uint64_t a) const { return spec_.radix.digit(a, failed_) % si_ == 0; }

  // Fills the coordinates in view of every node outside `use` (and != failed).
  void decode(Codeword& work, const std::vector<int>& use) {
    std::vector<int> unknown;
    for (int v = 0; v < spec_.n; ++v) {
      if (v != failed_ && std::find(use.begin(), use.end(), v) == use.end()) unknown.push_back(v);
    }
    if (unknown.empty()) return;
    const GroupSystem& sys = system(unknown);
    const DigitGroups& groups = sys.groups();
    const std::size_t g = groups.size();
    const Field& f = spec_.field;
    std::vector<Elem> rhs(families_ * g);
    for (std::uint64_t base : groups.bases()) {
      for (std::size_t m = 0; m < families_; ++m) {
        for (std::size_t e = 0; e < g; ++e) {
          const std::uint64_t a = base + groups.offset(e);
          const MonomialEntry b = ops_[failed_].row(a, si_);
          Elem acc = 0;
          for (int j : use) {
            const MonomialEntry p = ops_[j].row(a, si_ + m);
            const MonomialEntry q = ops_[j].row(b.col, m);
            acc = f.mul_add(p.coef, work[j][p.col], acc);
            acc = f.sub(acc, f.mul(b.coef, f.mul(q.coef, work[j][q.col])));
          }
          rhs[m * g + e] = f.neg(acc);
        }
      }
      const auto sol = sys.solve(rhs);
      for (std::size_t u = 0; u < unknown.size(); ++u) {
        for (std::size_t e = 0; e < g; ++e) work[unknown[u]][base + groups.offset(e)] = sol[u * g + e];
      }
    }
  }

  // The failed column from the view of every other node.
  Column reconstruct(const Codeword& work) const {
    const Field& f = spec_.field;
    Column out(spec_.l, 0);
    for (std::uint64_t a = 0; a < spec_.l; ++a) {
      if (!in_view(a)) continue;
      for (std::uint32_t tt = 0; tt < si_; ++tt) {
        const MonomialEntry self = ops_[failed_].row(a, tt);
        Elem acc = 0;
        for (int j = 0; j < spec_.n; ++j) {
          if (j == failed_) continue;
          const MonomialEntry e = ops_[j].row(a, tt);
          acc = f.mul_add(e.coef, work[j][e.col], acc);
        }
        out[self.col] = f.neg(f.div(acc, self.coef));
      }
    }
    return out;
  }

 private:
  const GroupSystem& system(const std::vector<int>& unknown) {
    auto it = cache_.find(unknown);
    if (it != cache_.end()) return *it->second;
    std::vector<int> positions;
    std::vector<std::vector<std::uint32_t>> values;
    for (int v : unknown) {
      if (!spec_.is_identity(v)) {
        positions.push_back(spec_.digit_of(v));
        values.emplace_back();
      }
    }
    positions.push_back(spec_.digit_of(failed_));
    values.emplace_back();
    for (std::uint32_t u = 0; u < spec_.s; u += si_) values.back().push_back(u);
    const Field& f = spec_.field;
    auto row = [&](std::size_t m, std::uint64_t a, std::vector<Term>& out) {
      const MonomialEntry b = ops_[failed_].row(a, si_);
      for (std::size_t u = 0; u < unknown.size(); ++u) {
        const MonomialEntry p = ops_[unknown[u]].row(a, si_ + m);
        const MonomialEntry q = ops_[unknown[u]].row(b.col, m);
        out.push_back({u, p.col, p.coef});
        out.push_back({u, q.col, f.neg(f.mul(b.coef, q.coef))});
      }
    };
    auto sys = std::make_shared<GroupSystem>(f, DigitGroups(spec_.radix, positions, values), families_,
                                             unknown.size(), row);
    return *cache_.emplace(unknown, std::move(sys)).first->second;
  }

  const CodeSpec& spec_;
  const std::vector<StructuredOp>& ops_;
  int failed_;
  std::uint32_t si_;
  std::size_t families_;
  std::map<std::vector<int>, std::shared_ptr<const GroupSystem>> cache_;
};

}  // namespace

EngineResult run_raw_access(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed,
                            const std::vector<int>& helpers, int t) {
  const auto ops = node_ops(spec);
  const std::size_t h = failed.size();
  const int d = static_cast<int>(helpers.size()) - 2 * t;
  std::vector<std::uint32_t> arity;
  for (std::size_t i = 0; i < h; ++i) arity.push_back(stage_arity(spec, d, static_cast<int>(i)));

  EngineResult out;
  Codeword view = zero_codeword(spec);
  std::vector<int> repaired;
  for (std::size_t i = 0; i < h; ++i) {
    const int fi = failed[i];
    ProjectedCode code(spec, ops, fi, arity[i]);
    for (int v : helpers) {
      for (std::uint64_t a = 0; a < spec.l; ++a) {
        if (code.in_view(a)) view[v][a] = ch.fetch(v, a);
      }
    }
    // Repaired nodes are trusted and come first; helpers fill up to d + i columns.
    const std::size_t need = static_cast<std::size_t>(d) + i;
    bool done = false;
    for (const auto& suspect : small_subsets(helpers, t)) {
      std::vector<int> use = repaired;
      for (int v : helpers) {
        if (use.size() == need) break;
        if (std::find(suspect.begin(), suspect.end(), v) == suspect.end()) use.push_back(v);
      }
      Codeword work = view;
      code.decode(work, use);
      std::vector<int> wrong;
      for (int v : helpers) {
        for (std::uint64_t a = 0; a < spec.l; ++a) {
          if (code.in_view(a) && work[v][a] != view[v][a]) {
            wrong.push_back(v);
            break;
          }
        }
      }
      if (wrong.size() > static_cast<std::size_t>(t)) continue;
      out.errors.insert(wrong.begin(), wrong.end());
      out.recovered.push_back(code.reconstruct(work));
      done = true;
      break;
    }
    if (!done) {
      throw Error(ErrorCode::DecodingFailure, "no set of at most " + std::to_string(t) +
                                                  " helpers explains the received columns");
    }
    view[fi] = out.recovered.back();
    repaired.push_back(fi);
  }
  return out;
}

}  // namespace mdsarray::detail
