#include "phl/charformula.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "phl/error.hpp"
#include "phl/weyl.hpp"

namespace phl {

namespace {

// Calls visit(chain) for every chain of shapes from empty to `shape` whose
// i-th step is a horizontal strip of size content[i].
void horizontal_strips(const std::vector<int>& shape, const std::vector<int>& content,
                       const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  const std::size_t rows = shape.size();
  std::vector<std::vector<int>> chain{std::vector<int>(rows, 0)};
  std::function<void(std::size_t)> step = [&](std::size_t letter) {
    if (letter == content.size()) {
      if (chain.back() == shape) visit(chain);
      return;
    }
    const std::vector<int> cur = chain.back();
    std::vector<int> next = cur;
    std::function<void(std::size_t, int)> fill = [&](std::size_t r, int left) {
      if (r == rows) {
        if (left == 0) {
          chain.push_back(next);
          step(letter + 1);
          chain.pop_back();
        }
        return;
      }
      int cap = std::min(shape[r], r == 0 ? shape[0] : cur[r - 1]);
      for (int len = cur[r]; len <= cap && len - cur[r] <= left; ++len) {
        next[r] = len;
        fill(r + 1, left - (len - cur[r]));
      }
      next[r] = cur[r];
    };
    fill(0, content[letter]);
  };
  step(0);
}

bool normalized_content(const DominantWeight& mu, const std::vector<int>& nu, std::vector<int>& content) {
  if (nu.size() != mu.parts.size()) throw Error(ErrorKind::ShapeMismatch, "weight length differs from m");
  if (std::accumulate(nu.begin(), nu.end(), 0LL) != std::accumulate(mu.parts.begin(), mu.parts.end(), 0LL))
    return false;
  content.clear();
  for (int x : nu) {
    if (x < mu.shift) return false;
    content.push_back(x - mu.shift);
  }
  return true;
}

}  // namespace

std::int64_t poly_eval(const Poly& p, std::int64_t x) {
  std::int64_t r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

std::string poly_str(const Poly& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || p[i] != 1) os << p[i];
    if (i >= 1) os << "v";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

DominantWeight DominantWeight::make(std::vector<int> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidParams, "empty weight");
  if (!std::is_sorted(parts.rbegin(), parts.rend()))
    throw Error(ErrorKind::InvalidParams, "weight must be nonincreasing");
  DominantWeight w;
  w.shift = parts.back();
  w.parts = std::move(parts);
  return w;
}

std::vector<int> DominantWeight::partition() const {
  std::vector<int> out = parts;
  for (int& x : out) x -= shift;
  return out;
}

DominantWeight DominantWeight::from_partition(const std::vector<int>& partition, int shift) {
  std::vector<int> parts = partition;
  for (int& x : parts) x += shift;
  DominantWeight w = make(parts);
  w.shift = shift;
  return w;
}

std::vector<Tableau> ssyt(const std::vector<int>& shape, const std::vector<int>& content) {
  std::vector<Tableau> out;
  horizontal_strips(shape, content, [&](const std::vector<std::vector<int>>& chain) {
    Tableau t(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) t[r].resize(static_cast<std::size_t>(shape[r]));
    for (std::size_t k = 1; k < chain.size(); ++k)
      for (std::size_t r = 0; r < shape.size(); ++r)
        for (int c = chain[k - 1][r]; c < chain[k][r]; ++c) t[r][static_cast<std::size_t>(c)] = static_cast<int>(k);
    while (!t.empty() && t.back().empty()) t.pop_back();
    out.push_back(std::move(t));
  });
  return out;
}

std::int64_t kostka(const DominantWeight& mu, const std::vector<int>& nu) {
  std::vector<int> content;
  if (!normalized_content(mu, nu, content)) return 0;
  std::int64_t n = 0;
  horizontal_strips(mu.partition(), content, [&](const std::vector<std::vector<int>>&) { ++n; });
  return n;
}

std::vector<int> reading_word(const Tableau& t) {
  std::vector<int> w;
  for (auto it = t.rbegin(); it != t.rend(); ++it) w.insert(w.end(), it->begin(), it->end());
  return w;
}

int charge(const std::vector<int>& word) {
  int top = word.empty() ? 0 : *std::max_element(word.begin(), word.end());
  std::vector<int> count(static_cast<std::size_t>(top) + 1, 0);
  for (int x : word) {
    if (x < 1) throw Error(ErrorKind::InvalidParams, "charge: letters start at 1");
    ++count[static_cast<std::size_t>(x)];
  }
  for (int r = 2; r <= top; ++r)
    if (count[static_cast<std::size_t>(r)] > count[static_cast<std::size_t>(r) - 1])
      throw Error(ErrorKind::InvalidParams, "charge: content must be a partition");

  const int n = static_cast<int>(word.size());
  std::vector<bool> used(word.size(), false);
  int total = 0, left = n;
  while (left > 0) {
    int pos = -1;
    for (int i = n - 1; i >= 0; --i)
      if (!used[static_cast<std::size_t>(i)] && word[static_cast<std::size_t>(i)] == 1) {
        pos = i;
        break;
      }
    used[static_cast<std::size_t>(pos)] = true;
    --left;
    int index = 0;
    for (int r = 2;; ++r) {
      int found = -1;
      bool wrapped = false;
      for (int s = 1; s <= n; ++s) {
        int i = ((pos - s) % n + n) % n;
        if (!used[static_cast<std::size_t>(i)] && word[static_cast<std::size_t>(i)] == r) {
          found = i;
          wrapped = i > pos;
          break;
        }
      }
      if (found < 0) break;
      if (wrapped) ++index;
      total += index;
      used[static_cast<std::size_t>(found)] = true;
      --left;
      pos = found;
    }
  }
  return total;
}

Poly kostka_foulkes(const DominantWeight& lambda, const DominantWeight& mu) {
  if (lambda.m() != mu.m()) throw Error(ErrorKind::ShapeMismatch, "weights of different rank");
  if (!dominance(lambda.parts, mu.parts)) return {};
  std::vector<int> content;
  normalized_content(mu, lambda.parts, content);
  while (!content.empty() && content.back() == 0) content.pop_back();
  Poly out;
  for (const auto& t : ssyt(mu.partition(), content)) {
    auto c = static_cast<std::size_t>(charge(reading_word(t)));
    if (out.size() <= c) out.resize(c + 1, 0);
    ++out[c];
  }
  return out;
}

const char* normalization_name(KLNormalization n) { return n == KLNormalization::Direct ? "direct" : "reversed"; }

int rho_pairing_zero_sum(const std::vector<int>& x) {
  // 2<rho, x> = sum_i x_i (m - 1 - 2i) = -2 sum_i i x_i when sum x = 0.
  long long s = 0, t = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i];
    t += static_cast<long long>(i) * x[i];
  }
  if (s != 0) throw Error(ErrorKind::InvalidParams, "rho pairing needs a zero-sum vector");
  return static_cast<int>(-t);
}

Poly kl_spherical(const DominantWeight& lambda, const DominantWeight& mu, KLNormalization n) {
  Poly k = kostka_foulkes(lambda, mu);
  if (k.empty() || n == KLNormalization::Direct) return k;
  std::vector<int> diff(mu.parts.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = mu.parts[i] - lambda.parts[i];
  int s = rho_pairing_zero_sum(diff);
  if (static_cast<int>(k.size()) - 1 > s) throw Error(ErrorKind::NormalizationError, "charge exceeds <rho, mu - lambda>");
  Poly out(static_cast<std::size_t>(s) + 1, 0);
  for (std::size_t i = 0; i < k.size(); ++i) out[static_cast<std::size_t>(s) - i] = k[i];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

LusztigKatoReport lusztig_kato_check(const DominantWeight& mu, int p, int f, int d, int aD, KLNormalization n,
                                     int threads) {
  const int m = mu.m();
  if (m < 2 || m > 3) throw Error(ErrorKind::TooLarge, "lusztig_kato_check supports m in {2, 3}");
  std::vector<int> mu0 = mu.parts;
  for (int& x : mu0) x -= mu.parts.back();
  if (m == 3 && rho_pairing2(mu0) > 4) throw Error(ErrorKind::TooLarge, "<rho, mu> must be at most 2 for m = 3");
  auto F = make_field(p, f, d, aD);
  if (F->Q > 9) throw Error(ErrorKind::TooLarge, "q^d must be at most 9");

  LusztigKatoReport rep;
  rep.mu = mu.parts;
  rep.p = p;
  rep.f = f;
  rep.d = d;
  rep.aD = aD;
  rep.normalization = n;
  rep.convention = "lambda and mu dominant; K lambda K = K w0(lambda) K; nu runs over all weights of V_mu";

  auto lambdas = dominance_interval(mu.parts);
  std::map<Cochar, SatakeRow> rows;
  for (const auto& l : lambdas) {
    rep.P[l] = kl_spherical(DominantWeight::make(l), mu, n);
    rows[l] = satake_classical(F, sorted_antidominant(l), Side::U, MuRange::Full, threads);
  }

  std::vector<Cochar> nus;
  for (const auto& l : lambdas) {
    Cochar v = l;
    std::sort(v.begin(), v.end());
    do nus.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
  }
  std::sort(nus.begin(), nus.end());

  rep.pass = true;
  for (const auto& nu : nus) {
    LusztigKatoEntry e;
    e.nu = nu;
    std::vector<int> diff(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) diff[i] = mu.parts[i] - nu[nu.size() - 1 - i];
    e.exponent = rho_pairing_zero_sum(diff);
    e.multiplicity = kostka(mu, nu);
    e.lhs = ipow(F->Q, e.exponent) * e.multiplicity;
    for (const auto& l : lambdas) {
      auto it = rows[l].counts.find(nu);
      std::uint64_t N = it == rows[l].counts.end() ? 0 : it->second;
      rep.counts[{l, nu}] = N;
      e.rhs += poly_eval(rep.P[l], F->Q) * static_cast<std::int64_t>(N);
    }
    e.pass = e.lhs == e.rhs;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(e);
  }
  return rep;
}

std::vector<CalibrationCase> calibration_baselines() { return {{{2, 0}, 2}, {{3, 1}, 3}, {{2, 1, 0}, 2}}; }

KLNormalization calibrate_normalization(int threads) {
  std::vector<KLNormalization> passing;
  for (auto n : {KLNormalization::Direct, KLNormalization::Reversed}) {
    bool ok = true;
    for (const auto& c : calibration_baselines())
      ok = ok && lusztig_kato_check(DominantWeight::make(c.mu), c.p, 1, 1, 0, n, threads).pass;
    if (ok) passing.push_back(n);
  }
  if (passing.size() != 1)
    throw Error(ErrorKind::NormalizationError,
                passing.empty() ? "no normalization passes the split baselines" : "calibration is not decisive");
  return passing.front();
}

std::int64_t weyl_dimension(const std::vector<int>& mu) {
  std::int64_t num = 1, den = 1;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      num *= mu[i] - mu[j] + static_cast<std::int64_t>(j - i);
      den *= static_cast<std::int64_t>(j - i);
    }
  return num / den;
}

}  // namespace phl
