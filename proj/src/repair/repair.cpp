#include "mdsarray/repair/repair.hpp"

#include <algorithm>
#include <string>

#include "engines.hpp"
#include "mdsarray/error.hpp"

namespace mdsarray {

std::uint64_t bound_bandwidth(int h, int d, int k, std::uint64_t l, int t) {
  if (h < 1 || d < k || t < 0) {
    throw Error(ErrorCode::BadParameters, "bound needs h >= 1, d >= k, t >= 0");
  }
  const std::uint64_t num = static_cast<std::uint64_t>(h) * static_cast<std::uint64_t>(d + 2 * t) * l;
  const std::uint64_t den = static_cast<std::uint64_t>(h + d - k);
  if (num % den != 0) {
    throw Error(ErrorCode::NotIntegral, std::to_string(num) + "/" + std::to_string(den) + " is not an integer");
  }
  return num / den;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Single: return "single";
    case Strategy::D: return "d";
    case Strategy::Multi: return "multi";
    case Strategy::Access: return "access";
    case Strategy::Decode: return "decode";
  }
  return "auto";
}

Strategy strategy_from_string(const std::string& name) {
  for (Strategy s : {Strategy::Auto, Strategy::Single, Strategy::D, Strategy::Multi, Strategy::Access,
                     Strategy::Decode}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::BadParameters, "unknown strategy '" + name + "'");
}

namespace {

bool full_shift(const CodeSpec& spec) {
  return spec.construction == Construction::C5 || spec.construction == Construction::C6;
}

std::vector<int> sorted_unique(std::vector<int> v, int n, const char* what) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] >= n) {
      throw Error(ErrorCode::BadIndex, std::string(what) + " node " + std::to_string(v[i] + 1) + " out of range");
    }
    if (i > 0 && v[i] == v[i - 1]) {
      throw Error(ErrorCode::BadIndex, std::string(what) + " node " + std::to_string(v[i] + 1) + " listed twice");
    }
  }
  return v;
}

std::string supported_list(const CodeSpec& spec) {
  std::string list;
  for (int x : supported_d(spec)) list += (list.empty() ? "" : ",") + std::to_string(x);
  return "{" + list + "}";
}

[[noreturn]] void unsupported(const CodeSpec& spec, Strategy s, const std::string& why) {
  throw Error(ErrorCode::UnsupportedSpec,
              "strategy '" + to_string(s) + "' on " + to_string(spec.construction) + ": " + why);
}

}  // namespace

Strategy auto_strategy(const CodeSpec& spec, std::size_t failures) {
  if (spec.diagonal()) return failures > 1 ? Strategy::Multi : Strategy::D;
  if (full_shift(spec)) return failures > 1 ? Strategy::Multi : Strategy::Access;
  return failures > 1 ? Strategy::Decode : Strategy::Access;
}

RepairTrace repair(const CodeSpec& spec, const Codeword& stored, const RepairRequest& request,
                   const RepairOptions& options) {
  RepairTrace trace;
  RepairPlan& plan = trace.plan;
  plan.failed = sorted_unique(request.failed, spec.n, "failed");
  plan.helpers = sorted_unique(request.helpers, spec.n, "helper");
  plan.t = request.t;
  const std::size_t h = plan.failed.size();
  if (h == 0) throw Error(ErrorCode::BadParameters, "no failed node given");
  if (h > static_cast<std::size_t>(spec.r)) {
    throw Error(ErrorCode::TooManyFailures, std::to_string(h) + " failures exceed r=" + std::to_string(spec.r));
  }
  for (int v : plan.helpers) {
    if (std::binary_search(plan.failed.begin(), plan.failed.end(), v)) {
      throw Error(ErrorCode::BadParameters, "node " + std::to_string(v + 1) + " is both failed and a helper");
    }
  }
  if (plan.t < 0) throw Error(ErrorCode::BadParameters, "t must be non-negative");
  plan.d = static_cast<int>(plan.helpers.size()) - 2 * plan.t;
  if (plan.d < spec.k) {
    throw Error(ErrorCode::TooFewHelpers, std::to_string(plan.helpers.size()) + " helpers with t=" +
                                              std::to_string(plan.t) + " leave d=" + std::to_string(plan.d) +
                                              " < k=" + std::to_string(spec.k));
  }
  if (stored.size() != static_cast<std::size_t>(spec.n)) {
    throw Error(ErrorCode::BadParameters, "stored codeword has the wrong number of columns");
  }

  Strategy s = request.strategy == Strategy::Auto ? auto_strategy(spec, h) : request.strategy;
  if (s != Strategy::Decode && !supports_d(spec, plan.d)) {
    throw Error(ErrorCode::BadParameters, "d=" + std::to_string(plan.d) + " is not supported by " +
                                              to_string(spec.construction) + " with s=" + std::to_string(spec.s) +
                                              "; supported d: " + supported_list(spec));
  }
  if (s == Strategy::Single && (h != 1 || plan.d != spec.n - 1)) {
    unsupported(spec, s, "single-node repair uses all n-1 survivors with t=0");
  }
  if ((s == Strategy::Single || s == Strategy::D) && h != 1) unsupported(spec, s, "one failed node expected");
  if (s == Strategy::Access && spec.diagonal()) unsupported(spec, s, "block sums always combine symbols");
  if (s == Strategy::Multi && spec.has_identity_node()) unsupported(spec, s, "sequential repair needs every node on a digit");
  if (spec.has_identity_node() && s != Strategy::Decode && (h != 1 || plan.t != 0)) {
    unsupported(spec, s, "only single failures with t=0");
  }
  if (s == Strategy::Decode && plan.t != 0) unsupported(spec, s, "whole-column decoding does not correct errors");
  plan.strategy = s;

  detail::HelperChannel ch(stored, plan.helpers, spec.l);
  detail::EngineResult result;
  if (s == Strategy::Decode) {
    result = detail::run_decode(spec, ch, plan.failed, plan.helpers);
  } else if (spec.diagonal()) {
    result = detail::run_block_sum(spec, ch, plan.failed, plan.helpers, plan.t, options.grs_decoder);
  } else if (full_shift(spec)) {
    result = detail::run_raw_access(spec, ch, plan.failed, plan.helpers, plan.t);
  } else {
    result = detail::run_subspace(spec, ch, plan.failed.front(), plan.helpers);
  }

  for (std::size_t x = 0; x < plan.helpers.size(); ++x) {
    const HelperUsage u{plan.helpers[x], ch.accessed(x), ch.transmitted(x)};
    trace.usage.push_back(u);
    trace.accessed_symbols += u.accessed;
    trace.transmitted_symbols += u.transmitted;
    plan.access.push_back(ch.access_list(x));
  }
  trace.recovered = std::move(result.recovered);
  trace.error_locations.assign(result.errors.begin(), result.errors.end());
  try {
    trace.bound = bound_bandwidth(static_cast<int>(h), plan.d, spec.k, spec.l, plan.t);
    trace.optimal = trace.transmitted_symbols <= trace.bound;
  } catch (const Error&) {
    const std::uint64_t num = h * static_cast<std::uint64_t>(plan.d + 2 * plan.t) * spec.l;
    const std::uint64_t den = h + static_cast<std::uint64_t>(plan.d - spec.k);
    trace.bound = (num + den - 1) / den;
    trace.optimal = false;
  }
  return trace;
}

RepairTrace repair_single(const CodeSpec& spec, const Codeword& stored, int failed) {
  std::vector<int> helpers;
  for (int v = 0; v < spec.n; ++v) {
    if (v != failed) helpers.push_back(v);
  }
  return repair(spec, stored, {{failed}, helpers, 0, Strategy::Single});
}

RepairTrace repair_d(const CodeSpec& spec, const Codeword& stored, int failed, const std::vector<int>& helpers, int t,
                     const RepairOptions& options) {
  return repair(spec, stored, {{failed}, helpers, t, Strategy::D}, options);
}

RepairTrace repair_multi(const CodeSpec& spec, const Codeword& stored, const std::vector<int>& failed,
                         const std::vector<int>& helpers, int t, const RepairOptions& options) {
  return repair(spec, stored, {failed, helpers, t, Strategy::Multi}, options);
}

RepairTrace repair_access(const CodeSpec& spec, const Codeword& stored, int failed, const std::vector<int>& helpers,
                          int t) {
  return repair(spec, stored, {{failed}, helpers, t, Strategy::Access});
}

}  // namespace mdsarray
