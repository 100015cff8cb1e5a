#include "pec/tilde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pec/errors.hpp"
#include "pec/indexing.hpp"

namespace pec {

namespace {

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

std::uint64_t packed_sub(std::uint64_t a, std::uint64_t b, int len, int q) {
  std::uint64_t out = 0, mult = 1;
  for (int t = 0; t < len; ++t) {
    std::uint64_t da = a % std::uint64_t(q), db = b % std::uint64_t(q);
    out += ((da + std::uint64_t(q) - db) % std::uint64_t(q)) * mult;
    a /= std::uint64_t(q);
    b /= std::uint64_t(q);
    mult *= std::uint64_t(q);
  }
  return out;
}

double product_marginal_prob(const std::vector<double>& marginal,
                             const SymbolVec& x) {
  double p = 1.0;
  for (Symbol s : x) p *= marginal[size_t(s)];
  return p;
}

double table_entropy(const std::vector<double>& p) {
  CompensatedSum h;
  for (double v : p)
    if (v > 0.0) h.add(-v * std::log2(v));
  return h.value();
}

}  // namespace

TildeEnsemble build_tilde(const SystemSpec& spec, const TypicalSets& sets) {
  if (!sets.has_d_tilde)
    throw validation_error(
        "typical sets were not intersected with a decodable set");
  if (sets.d_tilde.empty())
    throw validation_error(
        "conditioning event is empty; gamma is too small or the system too "
        "lossy");

  TildeEnsemble ens;
  ens.n = spec.n();
  ens.q = spec.q();
  ens.m1 = spec.m(1);
  ens.m2 = spec.m(2);
  ens.gamma = sets.gamma;
  ens.seq_space = spec.seq_space();
  ens.space1 = spec.cipher_space(1);
  ens.space2 = spec.cipher_space(2);
  ens.members = sets.d_tilde;
  ens.h_joint = sets.h_joint;
  ens.h_cond1 = sets.h_cond1;
  ens.h_cond2 = sets.h_cond2;

  const std::size_t count = ens.members.size();
  ens.source_mass.resize(count);
  ens.cond_mass.resize(count);
  std::vector<std::uint64_t> base1(count), base2(count);

  CompensatedSum q12;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::uint64_t x1 = ens.members[idx] / ens.seq_space;
    std::uint64_t x2 = ens.members[idx] % ens.seq_space;
    ens.member_index.emplace(ens.members[idx], idx);
    ens.source_mass[idx] = spec.source_pair_prob(x1, x2);
    q12.add(ens.source_mass[idx]);
    base1[idx] = pack_sequence(spec.keyfree_encode(1, spec.unpack(x1)), ens.q);
    base2[idx] = pack_sequence(spec.keyfree_encode(2, spec.unpack(x2)), ens.q);
  }
  ens.q12 = q12.value();
  for (std::size_t idx = 0; idx < count; ++idx)
    ens.cond_mass[idx] = ens.source_mass[idx] / ens.q12;

  ens.key_image = spec.cipher_key_image();
  ens.key_image1 = SystemSpec::marginal_cipher_image(ens.key_image, ens.space1,
                                                     ens.space2, 1);
  ens.key_image2 = SystemSpec::marginal_cipher_image(ens.key_image, ens.space1,
                                                     ens.space2, 2);
  ens.h_key_image = table_entropy(ens.key_image);
  ens.h_key_image1 = table_entropy(ens.key_image1);
  ens.h_key_image2 = table_entropy(ens.key_image2);

  // Conditioned ciphertext-pair distribution.
  std::vector<CompensatedSum> cipher(size_t(ens.space1 * ens.space2));
  for (std::size_t idx = 0; idx < count; ++idx) {
    for (std::uint64_t e1 = 0; e1 < ens.space1; ++e1) {
      std::uint64_t d1 = packed_add(e1, base1[idx], ens.m1, ens.q);
      for (std::uint64_t e2 = 0; e2 < ens.space2; ++e2) {
        double pv = ens.key_image[size_t(e1 * ens.space2 + e2)];
        if (pv == 0.0) continue;
        std::uint64_t d2 = packed_add(e2, base2[idx], ens.m2, ens.q);
        cipher[size_t(d1 * ens.space2 + d2)].add(ens.cond_mass[idx] * pv);
      }
    }
  }
  ens.cipher_joint.resize(cipher.size());
  for (std::size_t i = 0; i < cipher.size(); ++i)
    ens.cipher_joint[i] = cipher[i].value();
  ens.h_cipher_joint = table_entropy(ens.cipher_joint);
  ens.max_cipher_joint =
      *std::max_element(ens.cipher_joint.begin(), ens.cipher_joint.end());

  std::vector<double> cipher1(size_t(ens.space1), 0.0),
      cipher2(size_t(ens.space2), 0.0);
  for (std::uint64_t c1 = 0; c1 < ens.space1; ++c1)
    for (std::uint64_t c2 = 0; c2 < ens.space2; ++c2) {
      double v = ens.cipher_joint[size_t(c1 * ens.space2 + c2)];
      cipher1[size_t(c1)] += v;
      cipher2[size_t(c2)] += v;
    }
  ens.h_cipher1 = table_entropy(cipher1);
  ens.h_cipher2 = table_entropy(cipher2);

  // Per-direction slices, conditional masses, entropies and bound scans.
  auto marg1 = spec.source().marginal1();
  auto marg2 = spec.source().marginal2();
  for (int i = 1; i <= 2; ++i) {
    TildeEnsemble::Direction& dir = (i == 1) ? ens.dir1 : ens.dir2;
    const std::vector<std::uint64_t>& base_self = (i == 1) ? base1 : base2;
    const std::vector<double>& image_self =
        (i == 1) ? ens.key_image1 : ens.key_image2;
    const std::vector<double>& marg_other = (i == 1) ? marg2 : marg1;
    std::uint64_t space_self = (i == 1) ? ens.space1 : ens.space2;
    int m_self = (i == 1) ? ens.m1 : ens.m2;
    double h_cond_self = (i == 1) ? sets.h_cond1 : sets.h_cond2;

    for (std::size_t idx = 0; idx < count; ++idx) {
      std::uint64_t x1 = ens.members[idx] / ens.seq_space;
      std::uint64_t x2 = ens.members[idx] % ens.seq_space;
      dir.slice[i == 1 ? x2 : x1].push_back(idx);
    }
    for (auto& [given, slice] : dir.slice) dir.given.push_back(given);
    std::sort(dir.given.begin(), dir.given.end());

    CompensatedSum h_acc;
    CompensatedSum lambda_num;
    double worst_slack = std::numeric_limits<double>::infinity();
    double bound_scale = std::exp2(-double(ens.n) * (h_cond_self - ens.gamma));
    std::vector<double> row(size_t(space_self));
    for (std::uint64_t given : dir.given) {
      const auto& slice = dir.slice[given];
      double given_marg =
          product_marginal_prob(marg_other, unpack_sequence(given, ens.n, ens.q));
      CompensatedSum slice_mass_acc;
      for (std::size_t idx : slice) slice_mass_acc.add(ens.source_mass[idx]);
      double slice_mass = slice_mass_acc.value();
      double qc = given_marg > 0.0 ? slice_mass / given_marg : 0.0;
      dir.q_cond.emplace(given, qc);
      if (qc > 0.0) lambda_num.add(slice_mass * std::log2(qc));

      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t idx : slice) {
        for (std::uint64_t e = 0; e < space_self; ++e) {
          double pv = image_self[size_t(e)];
          if (pv == 0.0) continue;
          row[size_t(packed_add(e, base_self[idx], m_self, ens.q))] +=
              ens.cond_mass[idx] * pv;
        }
      }
      double p_given = slice_mass / ens.q12;
      double bound = bound_scale / qc;
      for (double cell : row) {
        if (cell <= 0.0) continue;
        double p_cond = cell / p_given;
        h_acc.add(cell * std::log2(p_given / cell));
        if (bound - p_cond < worst_slack) {
          worst_slack = bound - p_cond;
          dir.worst_prob_lhs = p_cond;
          dir.worst_prob_rhs = bound;
        }
      }
    }
    dir.h_cipher_given_other = h_acc.value();
    dir.worst_prob_slack = worst_slack;
    dir.lambda = lambda_num.value() / ens.q12;
  }

  // Projection masses under the marginal product laws.
  CompensatedSum q1_acc, q2_acc;
  for (std::uint64_t x1 : ens.dir2.given)
    q1_acc.add(product_marginal_prob(marg1, unpack_sequence(x1, ens.n, ens.q)));
  for (std::uint64_t x2 : ens.dir1.given)
    q2_acc.add(product_marginal_prob(marg2, unpack_sequence(x2, ens.n, ens.q)));
  ens.q1_mass = q1_acc.value();
  ens.q2_mass = q2_acc.value();
  return ens;
}

double tilde_identity_deviation(const SystemSpec& spec,
                                const TildeEnsemble& ens) {
  // Recompute the conditional law by explicit key enumeration and compare.
  std::uint64_t keys_total = spec.seq_space();
  if (checked_pow(spec.q(), 2 * spec.n()) > spec.budget())
    throw budget_error("tilde identity check exceeds the state budget");

  // Event mass recomputed independently over the full pair space.
  CompensatedSum event_mass;
  std::uint64_t space = spec.seq_space();
  for (std::uint64_t i = 0; i < space; ++i)
    for (std::uint64_t j = 0; j < space; ++j) {
      if (!ens.member_index.count(i * ens.seq_space + j)) continue;
      event_mass.add(spec.source_pair_prob(i, j));
    }
  double q12b = event_mass.value();

  double worst = 0.0;
  std::vector<double> row(size_t(ens.space1 * ens.space2));
  for (std::size_t idx = 0; idx < ens.members.size(); ++idx) {
    std::uint64_t x1i = ens.members[idx] / ens.seq_space;
    std::uint64_t x2i = ens.members[idx] % ens.seq_space;
    SymbolVec x1 = spec.unpack(x1i), x2 = spec.unpack(x2i);
    std::fill(row.begin(), row.end(), 0.0);
    for (std::uint64_t a = 0; a < keys_total; ++a) {
      SymbolVec k1 = spec.unpack(a);
      std::uint64_t c1 = pack_sequence(spec.encrypt(1, k1, x1), spec.q());
      for (std::uint64_t b = 0; b < keys_total; ++b) {
        SymbolVec k2 = spec.unpack(b);
        std::uint64_t c2 = pack_sequence(spec.encrypt(2, k2, x2), spec.q());
        double pk = 1.0;
        for (int t = 0; t < spec.n(); ++t)
          pk *= spec.keys().prob(k1[size_t(t)], k2[size_t(t)]);
        row[size_t(c1 * ens.space2 + c2)] += pk;
      }
    }
    double px = spec.source().product_prob(SequencePair(x1, x2));
    std::uint64_t a1 = pack_sequence(spec.keyfree_encode(1, x1), spec.q());
    std::uint64_t a2 = pack_sequence(spec.keyfree_encode(2, x2), spec.q());
    for (std::uint64_t c1 = 0; c1 < ens.space1; ++c1)
      for (std::uint64_t c2 = 0; c2 < ens.space2; ++c2) {
        std::uint64_t e1 = packed_sub(c1, a1, ens.m1, spec.q());
        std::uint64_t e2 = packed_sub(c2, a2, ens.m2, spec.q());
        double atom_a =
            ens.cond_mass[idx] * ens.key_image[size_t(e1 * ens.space2 + e2)];
        double atom_b = (px / q12b) * row[size_t(c1 * ens.space2 + c2)];
        worst = std::max(worst, std::abs(atom_a - atom_b));
      }
  }
  return worst;
}

}  // namespace pec
