#include "pec/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pec/errors.hpp"
#include "pec/indexing.hpp"

namespace pec {

namespace {

// Relative tolerance for detecting likelihood ties during decoding.
constexpr double kTieRel = 1e-12;

std::vector<SymbolVec> span_of(const std::vector<SymbolVec>& basis, int n,
                               const Alphabet& f) {
  std::uint64_t count = checked_pow(f.size(), int(basis.size()));
  std::vector<SymbolVec> span;
  span.reserve(size_t(count));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    SymbolVec v(size_t(n), 0);
    std::uint64_t rest = idx;
    for (size_t b = 0; b < basis.size(); ++b) {
      Symbol coeff = Symbol(rest % f.size());
      rest /= f.size();
      if (coeff == 0) continue;
      for (int t = 0; t < n; ++t)
        v[size_t(t)] = f.add(v[size_t(t)], f.mul(coeff, basis[b][size_t(t)]));
    }
    span.push_back(std::move(v));
  }
  return span;
}

SymbolVec add_vec(const SymbolVec& a, const SymbolVec& b, const Alphabet& f) {
  SymbolVec r(a.size());
  for (size_t t = 0; t < a.size(); ++t) r[t] = f.add(a[t], b[t]);
  return r;
}

}  // namespace

LinearEncoder::LinearEncoder(GfMatrix A) : matrix(std::move(A)) {
  if (matrix.rows < 1 || matrix.rows > matrix.cols)
    throw validation_error("encoder needs 1 <= m <= n");
  for (Symbol s : matrix.a)
    if (int(s) >= matrix.q)
      throw validation_error("encoder matrix entry outside GF(q)");
}

double LinearEncoder::rate_bits_per_symbol() const {
  return double(m()) / double(n()) * std::log2(double(matrix.q));
}

SystemSpec::SystemSpec(LinearEncoder enc1, LinearEncoder enc2, JointPmf source,
                       JointPmf keys, std::uint64_t budget)
    : n_(enc1.n()),
      field_(enc1.matrix.q),
      enc1_(std::move(enc1)),
      enc2_(std::move(enc2)),
      source_(std::move(source)),
      keys_(std::move(keys)),
      budget_(budget) {
  if (enc2_.n() != n_) throw validation_error("encoders disagree on blocklength");
  if (enc1_.matrix.q != enc2_.matrix.q)
    throw validation_error("encoders disagree on field size");
  if (source_.q1() != q() || source_.q2() != q() || keys_.q1() != q() ||
      keys_.q2() != q())
    throw validation_error(
        "source and key alphabets must both equal the encoder field");
  auto sorted_span = [this](const GfMatrix& A) {
    auto span = span_of(gf_kernel_basis(A), n_, field_);
    std::sort(span.begin(), span.end(),
              [this](const SymbolVec& a, const SymbolVec& b) {
                return pack(a) < pack(b);
              });
    return span;
  };
  kernel_span1_ = sorted_span(enc1_.matrix);
  kernel_span2_ = sorted_span(enc2_.matrix);
}

SystemSpec SystemSpec::random(int n, int q, int m1, int m2, JointPmf source,
                              JointPmf keys, std::uint64_t seed,
                              std::uint64_t budget) {
  Rng rng(Rng::derive(seed, 0xec0de));
  GfMatrix a1 = gf_random_full_row_rank(m1, n, q, rng);
  GfMatrix a2 = gf_random_full_row_rank(m2, n, q, rng);
  return SystemSpec(LinearEncoder(std::move(a1)), LinearEncoder(std::move(a2)),
                    std::move(source), std::move(keys), budget);
}

int SystemSpec::m(int terminal) const { return encoder(terminal).m(); }

const LinearEncoder& SystemSpec::encoder(int terminal) const {
  if (terminal == 1) return enc1_;
  if (terminal == 2) return enc2_;
  throw validation_error("terminal must be 1 or 2");
}

std::uint64_t SystemSpec::seq_space() const { return checked_pow(q(), n_); }

std::uint64_t SystemSpec::cipher_space(int terminal) const {
  return checked_pow(q(), m(terminal));
}

double SystemSpec::rate(int terminal) const {
  return encoder(terminal).rate_bits_per_symbol();
}

SymbolVec SystemSpec::keyfree_encode(int terminal, const SymbolVec& x) const {
  if (int(x.size()) != n_)
    throw std::domain_error("input length does not match blocklength");
  return gf_apply(encoder(terminal).matrix, x);
}

SymbolVec SystemSpec::encrypt(int terminal, const SymbolVec& key,
                              const SymbolVec& x) const {
  if (key.size() != x.size() || int(x.size()) != n_)
    throw std::domain_error("key/input length does not match blocklength");
  return keyfree_encode(terminal, add_vec(x, key, field_));
}

const std::vector<SymbolVec>& SystemSpec::kernel_span(int terminal) const {
  return terminal == 1 ? kernel_span1_ : kernel_span2_;
}

std::vector<SymbolVec> SystemSpec::coset(int terminal, const SymbolVec& s) const {
  auto particular = gf_solve(encoder(terminal).matrix, s);
  if (!particular) return {};
  std::vector<SymbolVec> out;
  const auto& span = kernel_span(terminal);
  out.reserve(span.size());
  for (const SymbolVec& k : span) out.push_back(add_vec(*particular, k, field_));
  std::sort(out.begin(), out.end(),
            [this](const SymbolVec& a, const SymbolVec& b) {
              return pack(a) < pack(b);
            });
  return out;
}

MlDecodeResult SystemSpec::ml_decode(const SymbolVec& s1,
                                     const SymbolVec& s2) const {
  if (int(s1.size()) != m(1) || int(s2.size()) != m(2))
    throw std::domain_error("syndrome length mismatch");
  auto coset1 = coset(1, s1);
  auto coset2 = coset(2, s2);
  if (coset1.empty() || coset2.empty()) {
    return {SequencePair(SymbolVec(size_t(n_), 0), SymbolVec(size_t(n_), 0)),
            false};
  }
  double best_p = -1.0;
  const SymbolVec* best1 = nullptr;
  const SymbolVec* best2 = nullptr;
  // Cosets are in increasing packed order, so the first maximizer seen is
  // the lexicographically smallest.
  for (const SymbolVec& x1 : coset1)
    for (const SymbolVec& x2 : coset2) {
      double p = 1.0;
      for (int t = 0; t < n_; ++t)
        p *= source_.prob(x1[size_t(t)], x2[size_t(t)]);
      if (p > best_p * (1.0 + kTieRel)) {
        best_p = p;
        best1 = &x1;
        best2 = &x2;
      }
    }
  return {SequencePair(*best1, *best2), true};
}

MlDecodeResult SystemSpec::decrypt(const SymbolVec& k1, const SymbolVec& k2,
                                   const SymbolVec& c1,
                                   const SymbolVec& c2) const {
  SymbolVec key_image1 = keyfree_encode(1, k1);
  SymbolVec key_image2 = keyfree_encode(2, k2);
  if (c1.size() != key_image1.size() || c2.size() != key_image2.size())
    throw std::domain_error("ciphertext length mismatch");
  SymbolVec s1(c1.size()), s2(c2.size());
  for (size_t i = 0; i < c1.size(); ++i) s1[i] = field_.sub(c1[i], key_image1[i]);
  for (size_t i = 0; i < c2.size(); ++i) s2[i] = field_.sub(c2[i], key_image2[i]);
  return ml_decode(s1, s2);
}

void SystemSpec::check_pair_budget(const char* op) const {
  if (checked_pow(q(), 2 * n_) > budget_)
    throw budget_error(std::string(op) + ": q^(2n) exceeds the state budget");
}

DecodableSet SystemSpec::decodable_set() const {
  check_pair_budget("decodable_set");
  DecodableSet d;
  d.n = n_;
  d.q = q();
  d.seq_space = seq_space();

  std::uint64_t syn1 = cipher_space(1), syn2 = cipher_space(2);
  for (std::uint64_t i = 0; i < syn1; ++i) {
    SymbolVec s1 = unpack_sequence(i, m(1), q());
    auto coset1 = coset(1, s1);
    if (coset1.empty()) continue;
    for (std::uint64_t j = 0; j < syn2; ++j) {
      SymbolVec s2 = unpack_sequence(j, m(2), q());
      auto res = ml_decode(s1, s2);
      if (!res.in_range) continue;
      std::uint64_t x1 = pack(res.pair.x1), x2 = pack(res.pair.x2);
      d.members.push_back(x1 * d.seq_space + x2);
    }
  }
  std::sort(d.members.begin(), d.members.end());
  d.member_lookup.insert(d.members.begin(), d.members.end());
  for (std::uint64_t m : d.members) {
    std::uint64_t x1 = m / d.seq_space, x2 = m % d.seq_space;
    d.slice1_given2[x2].push_back(x1);
    d.slice2_given1[x1].push_back(x2);
  }
  for (auto& [x2, xs] : d.slice1_given2) {
    std::sort(xs.begin(), xs.end());
    d.projection2.push_back(x2);
  }
  for (auto& [x1, xs] : d.slice2_given1) {
    std::sort(xs.begin(), xs.end());
    d.projection1.push_back(x1);
  }
  std::sort(d.projection1.begin(), d.projection1.end());
  std::sort(d.projection2.begin(), d.projection2.end());
  return d;
}

double SystemSpec::error_probability() const {
  return error_probability(decodable_set());
}

double SystemSpec::error_probability(const DecodableSet& d) const {
  CompensatedSum mass;
  for (std::uint64_t m : d.members)
    mass.add(source_pair_prob(m / d.seq_space, m % d.seq_space));
  double pe = 1.0 - mass.value();
  return pe < 0.0 ? 0.0 : pe;
}

double SystemSpec::error_probability_sampled(std::uint64_t trials,
                                             std::uint64_t seed) const {
  Rng rng(Rng::derive(seed, 0x9e));
  std::vector<double> cdf_x(source_.probs().size()), cdf_k(keys_.probs().size());
  CompensatedSum ax, ak;
  for (size_t i = 0; i < cdf_x.size(); ++i) {
    ax.add(source_.probs()[i]);
    cdf_x[i] = ax.value();
  }
  for (size_t i = 0; i < cdf_k.size(); ++i) {
    ak.add(keys_.probs()[i]);
    cdf_k[i] = ak.value();
  }
  auto draw_pair = [&](const std::vector<double>& cdf, int q2, SymbolVec& a,
                       SymbolVec& b) {
    for (int t = 0; t < n_; ++t) {
      double u = rng.uniform();
      size_t cell = 0;
      while (cell + 1 < cdf.size() && u >= cdf[cell]) ++cell;
      a[size_t(t)] = Symbol(cell / size_t(q2));
      b[size_t(t)] = Symbol(cell % size_t(q2));
    }
  };
  std::uint64_t errors = 0;
  SymbolVec x1(size_t(n_)), x2(size_t(n_)), k1(size_t(n_)), k2(size_t(n_));
  for (std::uint64_t t = 0; t < trials; ++t) {
    draw_pair(cdf_x, source_.q2(), x1, x2);
    draw_pair(cdf_k, keys_.q2(), k1, k2);
    SymbolVec c1 = encrypt(1, k1, x1);
    SymbolVec c2 = encrypt(2, k2, x2);
    auto res = decrypt(k1, k2, c1, c2);
    if (!res.in_range || res.pair.x1 != x1 || res.pair.x2 != x2) ++errors;
  }
  return double(errors) / double(trials);
}

std::vector<double> SystemSpec::cipher_key_image() const {
  check_pair_budget("cipher_key_image");
  std::uint64_t space1 = cipher_space(1), space2 = cipher_space(2);
  std::vector<double> image(size_t(space1 * space2), 0.0);
  std::uint64_t keys_total = seq_space();
  for (std::uint64_t i = 0; i < keys_total; ++i) {
    SymbolVec k1 = unpack(i);
    std::uint64_t c1 = pack_sequence(keyfree_encode(1, k1), q());
    for (std::uint64_t j = 0; j < keys_total; ++j) {
      SymbolVec k2 = unpack(j);
      std::uint64_t c2 = pack_sequence(keyfree_encode(2, k2), q());
      double pk = 1.0;
      for (int t = 0; t < n_; ++t)
        pk *= keys_.prob(k1[size_t(t)], k2[size_t(t)]);
      image[size_t(c1 * space2 + c2)] += pk;
    }
  }
  return image;
}

std::vector<double> SystemSpec::marginal_cipher_image(
    const std::vector<double>& image, std::uint64_t space1,
    std::uint64_t space2, int terminal) {
  std::vector<double> out(size_t(terminal == 1 ? space1 : space2), 0.0);
  for (std::uint64_t c1 = 0; c1 < space1; ++c1)
    for (std::uint64_t c2 = 0; c2 < space2; ++c2) {
      double v = image[size_t(c1 * space2 + c2)];
      out[size_t(terminal == 1 ? c1 : c2)] += v;
    }
  return out;
}

namespace {

// Digit-wise mod-q addition of two packed base-q indices.
std::uint64_t packed_add(std::uint64_t a, std::uint64_t b, int len, int q) {
  std::uint64_t out = 0, mult = 1;
  for (int t = 0; t < len; ++t) {
    std::uint64_t da = a % std::uint64_t(q), db = b % std::uint64_t(q);
    out += ((da + db) % std::uint64_t(q)) * mult;
    a /= std::uint64_t(q);
    b /= std::uint64_t(q);
    mult *= std::uint64_t(q);
  }
  return out;
}

}  // namespace

double SystemSpec::leakage_exact() const {
  if (checked_pow(q(), 4 * n_) > budget_)
    throw budget_error(
        "leakage_exact: q^(4n) exceeds the state budget; use leakage_sampled");

  std::uint64_t space1 = cipher_space(1), space2 = cipher_space(2);
  std::uint64_t cipher_total = space1 * space2;
  std::vector<double> image = cipher_key_image();

  // p(c | x) = image[c - A x], so H(C | X = x) = H(image) for every x and
  // I(C; X) = H(C) - H(image).
  std::vector<CompensatedSum> cipher(size_t(cipher_total));
  std::uint64_t seqs = seq_space();
  CompensatedSum mass;
  for (std::uint64_t i = 0; i < seqs; ++i) {
    SymbolVec x1 = unpack(i);
    std::uint64_t a1 = pack_sequence(keyfree_encode(1, x1), q());
    for (std::uint64_t j = 0; j < seqs; ++j) {
      double px = source_pair_prob(i, j);
      if (px == 0.0) continue;
      SymbolVec x2 = unpack(j);
      std::uint64_t a2 = pack_sequence(keyfree_encode(2, x2), q());
      mass.add(px);
      for (std::uint64_t e1 = 0; e1 < space1; ++e1) {
        std::uint64_t d1 = packed_add(e1, a1, m(1), q());
        std::uint64_t base_src = e1 * space2;
        std::uint64_t base_dst = d1 * space2;
        for (std::uint64_t e2 = 0; e2 < space2; ++e2) {
          double pv = image[size_t(base_src + e2)];
          if (pv == 0.0) continue;
          std::uint64_t d2 = packed_add(e2, a2, m(2), q());
          cipher[size_t(base_dst + d2)].add(px * pv);
        }
      }
    }
  }
  CompensatedSum h_cipher;
  for (const auto& cell : cipher) {
    double p = cell.value();
    if (p > 0.0) h_cipher.add(-p * std::log2(p));
  }
  CompensatedSum h_image;
  for (double p : image)
    if (p > 0.0) h_image.add(-p * std::log2(p));
  double mi = h_cipher.value() - mass.value() * h_image.value();
  return (mi < 0.0 && mi > -1e-9) ? 0.0 : mi;
}

LeakageEstimate SystemSpec::leakage_sampled(std::uint64_t trials,
                                            std::uint64_t seed) const {
  if (trials < 1000)
    throw validation_error("leakage_sampled needs at least 1000 trials");
  if (checked_pow(q(), 2 * n_) > (std::uint64_t(1) << 32) ||
      cipher_space(1) * cipher_space(2) > (std::uint64_t(1) << 32))
    throw budget_error("leakage_sampled: state indices exceed 32 bits");
  Rng rng(Rng::derive(seed, 0x5a));
  std::vector<double> cdf_x(source_.probs().size()), cdf_k(keys_.probs().size());
  CompensatedSum ax, ak;
  for (size_t i = 0; i < cdf_x.size(); ++i) {
    ax.add(source_.probs()[i]);
    cdf_x[i] = ax.value();
  }
  for (size_t i = 0; i < cdf_k.size(); ++i) {
    ak.add(keys_.probs()[i]);
    cdf_k[i] = ak.value();
  }
  auto draw_cell = [&](const std::vector<double>& cdf) {
    double u = rng.uniform();
    size_t cell = 0;
    while (cell + 1 < cdf.size() && u >= cdf[cell]) ++cell;
    return cell;
  };

  std::uint64_t space2 = cipher_space(2);
  std::unordered_map<std::uint64_t, std::uint32_t> joint_counts;
  SymbolVec x1(size_t(n_)), x2(size_t(n_)), k1(size_t(n_)), k2(size_t(n_));
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (int i = 0; i < n_; ++i) {
      size_t cx = draw_cell(cdf_x);
      x1[size_t(i)] = Symbol(cx / size_t(source_.q2()));
      x2[size_t(i)] = Symbol(cx % size_t(source_.q2()));
      size_t ck = draw_cell(cdf_k);
      k1[size_t(i)] = Symbol(ck / size_t(keys_.q2()));
      k2[size_t(i)] = Symbol(ck % size_t(keys_.q2()));
    }
    std::uint64_t c = pack_sequence(encrypt(1, k1, x1), q()) * space2 +
                      pack_sequence(encrypt(2, k2, x2), q());
    std::uint64_t x = pack(x1) * seq_space() + pack(x2);
    ++joint_counts[(c << 32) ^ x];
  }

  // Observed cells in deterministic order for reproducible bootstrap.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> cells(
      joint_counts.begin(), joint_counts.end());
  std::sort(cells.begin(), cells.end());

  auto mm_mi = [&](const std::vector<std::uint32_t>& counts) {
    std::unordered_map<std::uint64_t, std::uint64_t> nc, nx;
    std::uint64_t total = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (counts[i] == 0) continue;
      nc[cells[i].first >> 32] += counts[i];
      nx[cells[i].first & 0xffffffffull] += counts[i];
      total += counts[i];
    }
    double mi = 0.0;
    std::uint64_t k_joint = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (counts[i] == 0) continue;
      ++k_joint;
      double pj = double(counts[i]) / double(total);
      double pc = double(nc[cells[i].first >> 32]) / double(total);
      double px = double(nx[cells[i].first & 0xffffffffull]) / double(total);
      mi += pj * std::log2(pj / (pc * px));
    }
    double correction = (double(nc.size()) - 1.0 + double(nx.size()) - 1.0 -
                         (double(k_joint) - 1.0)) /
                        (2.0 * double(total) * std::log(2.0));
    return mi + correction;
  };

  std::vector<std::uint32_t> base_counts(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) base_counts[i] = cells[i].second;
  double estimate = mm_mi(base_counts);

  std::vector<double> weights(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) weights[i] = double(cells[i].second);
  AliasSampler alias(weights);
  const int reps = 120;
  double mean = 0.0, m2 = 0.0;
  std::vector<std::uint32_t> boot(cells.size());
  for (int r = 0; r < reps; ++r) {
    std::fill(boot.begin(), boot.end(), 0u);
    for (std::uint64_t t = 0; t < trials; ++t) ++boot[alias.draw(rng)];
    double v = mm_mi(boot);
    double delta = v - mean;
    mean += delta / double(r + 1);
    m2 += delta * (v - mean);
  }
  double sd = std::sqrt(m2 / double(reps - 1));
  double mm_scale = (double(cells.size())) / (2.0 * double(trials) * std::log(2.0));
  LeakageEstimate est;
  est.bits = estimate;
  est.radius = 2.4 * sd + mm_scale;
  est.trials = trials;
  return est;
}

double SystemSpec::source_pair_prob(std::uint64_t x1_idx,
                                    std::uint64_t x2_idx) const {
  double p = 1.0;
  for (int t = 0; t < n_; ++t) {
    std::uint64_t pow = checked_pow(q(), n_ - 1 - t);
    Symbol a = Symbol((x1_idx / pow) % std::uint64_t(q()));
    Symbol b = Symbol((x2_idx / pow) % std::uint64_t(q()));
    p *= source_.prob(a, b);
  }
  return p;
}

SymbolVec SystemSpec::unpack(std::uint64_t idx) const {
  return unpack_sequence(idx, n_, q());
}

std::uint64_t SystemSpec::pack(const SymbolVec& x) const {
  return pack_sequence(x, q());
}

}  // namespace pec
