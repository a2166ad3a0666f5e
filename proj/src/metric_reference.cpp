#include "pbm/metric_reference.hpp"

#include <map>
#include <optional>
#include <set>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

struct RefCtx {
  Rat lambda;
  size_t pairBudget;
  DeriveCache cache;
  std::map<std::pair<TermPtr, TermPtr>, std::vector<std::optional<Rat>>,
           bool (*)(const std::pair<TermPtr, TermPtr>&, const std::pair<TermPtr, TermPtr>&)>
      memo;

  RefCtx(Rat l, size_t budget)
      : lambda(std::move(l)), pairBudget(budget), memo(&RefCtx::keyLess) {}

  static bool keyLess(const std::pair<TermPtr, TermPtr>& a, const std::pair<TermPtr, TermPtr>& b) {
    int c = compareTerms(a.first, b.first);
    if (c) return c < 0;
    return compareTerms(a.second, b.second) < 0;
  }
};

Rat dk(RefCtx& ctx, const TermPtr& s, const TermPtr& t, unsigned k) {
  if (k == 0 || sameTerm(s, t)) return 0;
  std::pair<TermPtr, TermPtr> key =
      compareTerms(s, t) <= 0 ? std::make_pair(s, t) : std::make_pair(t, s);
  auto it = ctx.memo.find(key);
  if (it == ctx.memo.end()) {
    if (ctx.memo.size() >= ctx.pairBudget)
      throw BudgetExceededError("reference engine pair budget exceeded");
    it = ctx.memo.emplace(key, std::vector<std::optional<Rat>>()).first;
  }
  if (it->second.size() > k && it->second[k]) return *it->second[k];

  const TransitionSet& ts = ctx.cache.derive(key.first);
  const TransitionSet& tt = ctx.cache.derive(key.second);
  std::set<Action> acts;
  for (const auto& [a, d] : ts.byAction) acts.insert(a);
  for (const auto& [a, d] : tt.byAction) acts.insert(a);
  Rat best = 0;
  for (const auto& a : acts) {
    const auto* L = ts.derivatives(a);
    const auto* R = tt.derivatives(a);
    if (!L || !R) {
      best = 1;
      break;
    }
    Rat h = hausdorff(
        [&](const Dist& mu, const Dist& nu) {
          auto kr = kantorovich(
              [&](const TermPtr& u, const TermPtr& v) { return dk(ctx, u, v, k - 1); }, mu, nu);
          return ctx.lambda * kr.value;
        },
        *L, *R);
    if (h > best) best = h;
  }
  auto& slot = ctx.memo[key];
  if (slot.size() <= k) slot.resize(k + 1);
  slot[k] = best;
  return best;
}

}  // namespace

Rat referenceUptoK(const TermPtr& s, const TermPtr& t, unsigned k, const Rat& lambda,
                   size_t pairBudget) {
  if (!(lambda > 0 && lambda <= 1))
    throw DomainError("lambda must be in (0,1], got " + ratToString(lambda));
  RefCtx ctx(lambda, pairBudget);
  return dk(ctx, s, t, k);
}

}  // namespace pbm
