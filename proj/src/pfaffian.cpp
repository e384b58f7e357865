#include "pfib/pfaffian.hpp"

#include <sstream>

#include "pfib/parse.hpp"

namespace pfib {

int upper_index(int i, int j) {
  static constexpr int idx[5][5] = {{-1, 0, 1, 2, 3},
                                    {-1, -1, 4, 5, 6},
                                    {-1, -1, -1, 7, 8},
                                    {-1, -1, -1, -1, 9},
                                    {-1, -1, -1, -1, -1}};
  if (i < 0 || j < 0 || i >= 5 || j >= 5 || i >= j) throw error("bad upper-triangle index");
  return idx[i][j];
}

Polynomial PfaffianModel::entry(int i, int j) const {
  if (i == j) return Polynomial::zero(field());
  if (i < j) return upper[upper_index(i, j)];
  return -upper[upper_index(j, i)];
}

std::vector<Polynomial> PfaffianSystem::signed_vector() const {
  return {c1, -c2, p1, -p2, p3};
}

namespace {

// Pfaffian of the 4x4 skew submatrix on sorted indices {a,b,c,d}:
// M[a][b]M[c][d] - M[a][c]M[b][d] + M[a][d]M[b][c].
Polynomial sub_pfaffian(const PfaffianModel& m, int skip) {
  int idx[4], n = 0;
  for (int i = 0; i < 5; ++i)
    if (i != skip) idx[n++] = i;
  auto e = [&](int i, int j) { return m.entry(idx[i], idx[j]); };
  return e(0, 1) * e(2, 3) - e(0, 2) * e(1, 3) + e(0, 3) * e(1, 2);
}

}  // namespace

PfaffianSystem pfaffians(const PfaffianModel& m) {
  PfaffianSystem s{sub_pfaffian(m, 0), sub_pfaffian(m, 1), sub_pfaffian(m, 2),
                   sub_pfaffian(m, 3), sub_pfaffian(m, 4)};
  return s;
}

std::vector<Polynomial> complex_composition(const PfaffianModel& m) {
  auto v = pfaffians(m).signed_vector();
  std::vector<Polynomial> out;
  for (int i = 0; i < 5; ++i) {
    Polynomial acc = Polynomial::zero(m.field());
    for (int j = 0; j < 5; ++j) acc = acc + m.entry(i, j) * v[j];
    out.push_back(acc);
  }
  return out;
}

namespace {

std::string term_bidegrees(const Polynomial& p, const AmbientWeights& w) {
  std::vector<Bidegree> seen;
  for (const auto& [mono, c] : p.terms()) {
    Bidegree d = mono.bidegree(w);
    bool found = false;
    for (const auto& s : seen)
      if (s == d) found = true;
    if (!found) seen.push_back(d);
  }
  std::string out;
  for (const auto& d : seen) {
    if (!out.empty()) out += " ";
    out += d.str();
  }
  return out;
}

}  // namespace

HomogeneityReport check_homogeneity(const PfaffianModel& m) {
  HomogeneityReport rep;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      const Polynomial& e = m.upper[upper_index(i, j)];
      if (e.is_zero()) continue;
      if (!e.bidegree(m.weights)) {
        rep.consistent = false;
        rep.issues.push_back({"M[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                              "term bidegrees: " + term_bidegrees(e, m.weights)});
      }
    }
  PfaffianSystem s = pfaffians(m);
  const char* names[5] = {"c1", "c2", "p1", "p2", "p3"};
  auto gens = s.generators();
  for (int i = 0; i < 5; ++i) {
    if (gens[i].is_zero()) {
      rep.consistent = false;
      rep.issues.push_back({names[i], "vanishes identically"});
      continue;
    }
    auto d = gens[i].bidegree(m.weights);
    if (!d) {
      rep.consistent = false;
      rep.issues.push_back({names[i], "term bidegrees: " + term_bidegrees(gens[i], m.weights)});
    } else if (rep.consistent) {
      rep.pfaffian_bidegrees.push_back(*d);
    }
  }
  if (!rep.consistent) rep.pfaffian_bidegrees.clear();
  return rep;
}

namespace {

Polynomial mono_poly(const FieldSpec& f, int t0, int t1, int xi = -1, int xpow = 1) {
  Monomial m;
  m.e[0] = static_cast<std::int16_t>(t0);
  m.e[1] = static_cast<std::int16_t>(t1);
  if (xi >= 0) m.e[kXBase + xi] = static_cast<std::int16_t>(xpow);
  return Polynomial::term(m, Scalar::one(f));
}

void require_quadric(const Polynomial& q, const char* who) {
  if (q.is_zero()) throw error(std::string(who) + ": zero quadric");
  for (const auto& [m, c] : q.terms())
    if (m.xdeg() != 2 || m.has_aux()) throw error(std::string(who) + ": expected x-degree 2");
}

}  // namespace

PfaffianModel family_A(int n, const Polynomial& q1, const Polynomial& q2, const Polynomial& q3) {
  if (n < 1) throw error("family A needs n >= 1");
  const FieldSpec f = q1.field();
  for (const auto* q : {&q1, &q2, &q3}) {
    require_quadric(*q, "family A");
    for (const auto& [m, c] : q->terms())
      if (m.tdeg() != 0) throw error("family A: quadrics must be x-only");
  }
  PfaffianModel m;
  m.weights = AmbientWeights::product_space();
  m.upper = {mono_poly(f, 0, n),        mono_poly(f, 0, 0, 0), mono_poly(f, 0, 0, 2),
             mono_poly(f, 0, 0, 3),     mono_poly(f, n, 0, 1), mono_poly(f, n, 0, 3),
             mono_poly(f, n, 0, 4),     q1, q2, q3};
  m.label = "family A n=" + std::to_string(n);
  return m;
}

AmbientWeights family_B_weights(int a) {
  AmbientWeights w;
  w.a = {a, a, 0, 0, 0};
  return w;
}

AmbientWeights family_C_weights(int d) {
  AmbientWeights w;
  w.a = {2 * d - 1, 0, 0, 0, 0};
  return w;
}

PfaffianModel family_B(int a, const Polynomial& q1, const Polynomial& q2, const Polynomial& q3) {
  if (a < 0) throw error("family B needs a >= 0");
  const FieldSpec f = q1.field();
  for (const auto* q : {&q1, &q2, &q3}) require_quadric(*q, "family B");
  PfaffianModel m;
  m.weights = family_B_weights(a);
  m.upper = {mono_poly(f, 0, 1),        mono_poly(f, a, 0, 0), mono_poly(f, 0, 0, 2),
             mono_poly(f, 0, 0, 3),     mono_poly(f, a + 1, 0, 1), mono_poly(f, 1, 0, 3),
             mono_poly(f, 1, 0, 4),     q1, q2, q3};
  m.label = "family B a=" + std::to_string(a);
  return m;
}

PfaffianModel family_C(int d, const Polynomial& q1, const Polynomial& q2, const Polynomial& q3) {
  if (d < 1) throw error("family C needs d >= 1");
  const FieldSpec f = q1.field();
  for (const auto* q : {&q1, &q2, &q3}) require_quadric(*q, "family C");
  PfaffianModel m;
  m.weights = family_C_weights(d);
  m.upper = {mono_poly(f, 0, d + 1),    mono_poly(f, 2 * d, 0, 0), mono_poly(f, 0, 0, 2),
             mono_poly(f, 0, 0, 3),     mono_poly(f, d + 1, 0, 1), mono_poly(f, d, 0, 3),
             mono_poly(f, d, 0, 4),     q1, q2, q3};
  m.label = "family C d=" + std::to_string(d);
  return m;
}

std::array<Bidegree, 3> family_B_stated_q_bidegrees(int a) {
  return {Bidegree{a, 2}, Bidegree{a, 2}, Bidegree{a, 2}};
}

std::array<Bidegree, 3> family_B_consistent_q_bidegrees() {
  return {Bidegree{0, 2}, Bidegree{0, 2}, Bidegree{0, 2}};
}

std::array<Bidegree, 3> family_C_stated_q_bidegrees() {
  return {Bidegree{0, 2}, Bidegree{0, 2}, Bidegree{-1, 2}};
}

PfaffianModel local_model(int n, const std::array<Polynomial, 3>& l,
                          const std::array<Polynomial, 3>& m,
                          const std::array<Polynomial, 3>& q) {
  if (n < 1) throw error("local model needs n >= 1");
  const FieldSpec f = l[0].field();
  // Shape checks apply to concrete entries only; auxiliary symbols stand in
  // for arbitrary sections.
  for (const auto& lin : l)
    for (const auto& [mono, c] : lin.terms())
      if (!mono.has_aux() && (mono.xdeg() != 1 || mono.tdeg() != 0))
        throw error("local model: l_i must be x-linear");
  for (const auto& lin : m)
    for (const auto& [mono, c] : lin.terms())
      if (!mono.has_aux() && (mono.xdeg() != 1 || mono.tdeg() != 0))
        throw error("local model: m_i must be x-linear");
  for (const auto& quad : q)
    for (const auto& [mono, c] : quad.terms())
      if (!mono.has_aux() && (mono.xdeg() != 2 || mono.e[1] != 0))
        throw error("local model: q_i must have x-degree 2");
  PfaffianModel model;
  model.weights = AmbientWeights::product_space();
  model.upper = {mono_poly(f, n, 0), l[0], l[1], l[2], m[0], m[1], m[2], q[2], -q[1], q[0]};
  model.label = "local model n=" + std::to_string(n);
  return model;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Polynomial random_section(std::uint64_t& state, const Bidegree& d, const AmbientWeights& w,
                          const FieldSpec& f) {
  auto basis = monomial_basis(d, w);
  if (basis.empty()) throw error("random_section: empty graded piece " + d.str());
  Polynomial p(f);
  while (p.is_zero()) {
    for (const auto& m : basis) {
      long long c = static_cast<long long>(splitmix64(state) % 7) - 3;  // -3..3
      p.add_term(m, Scalar::of_int(c, f));
    }
  }
  return p;
}

std::array<Polynomial, 3> random_quadrics(std::uint64_t seed, const FieldSpec& f) {
  return random_sections_for(seed, {Bidegree{0, 2}, Bidegree{0, 2}, Bidegree{0, 2}},
                             AmbientWeights::product_space(), f);
}

std::array<Polynomial, 3> random_sections_for(std::uint64_t seed,
                                              const std::array<Bidegree, 3>& degs,
                                              const AmbientWeights& w, const FieldSpec& f) {
  std::uint64_t state = seed * 0x2545f4914f6cdd1dULL + 0x853c49e6748fea9bULL;
  std::array<Polynomial, 3> out{Polynomial(f), Polynomial(f), Polynomial(f)};
  for (int i = 0; i < 3; ++i) out[i] = random_section(state, degs[i], w, f);
  return out;
}

std::string write_model(const PfaffianModel& m) {
  std::ostringstream out;
  out << "pfaffian-model v1\n";
  out << "weights:";
  for (int i = 0; i < 5; ++i) out << " " << m.weights.a[i];
  out << "\n";
  out << "label: " << m.label << "\n";
  if (m.seed) out << "seed: " << *m.seed << "\n";
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      out << "entry " << i << " " << j << ": " << m.upper[upper_index(i, j)].str() << "\n";
  return out.str();
}

PfaffianModel read_model(const std::string& text, const FieldSpec& f) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "pfaffian-model v1")
    throw error("model file: missing 'pfaffian-model v1' header");
  PfaffianModel m;
  for (auto& e : m.upper) e = Polynomial::zero(f);
  std::array<bool, 10> seen{};
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "weights:") {
      for (int i = 0; i < 5; ++i)
        if (!(ls >> m.weights.a[i])) throw error("model file: bad weights line");
      for (int i = 0; i < 5; ++i)
        if (m.weights.a[i] < 0) throw error("model file: negative scroll weight");
    } else if (key == "label:") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest = rest.substr(1);
      m.label = rest;
    } else if (key == "seed:") {
      std::uint64_t s;
      if (!(ls >> s)) throw error("model file: bad seed line");
      m.seed = s;
    } else if (key == "entry") {
      int i, j;
      char colon;
      if (!(ls >> i >> j >> colon) || colon != ':') throw error("model file: bad entry line");
      std::string rest;
      std::getline(ls, rest);
      int idx = upper_index(i, j);
      m.upper[idx] = parse_polynomial(rest, f);
      seen[idx] = true;
    } else {
      throw error("model file: unknown key '" + key + "'");
    }
  }
  for (int i = 0; i < 10; ++i)
    if (!seen[i]) throw error("model file: missing upper-triangle entry");
  return m;
}

}  // namespace pfib
