#include "dendrotensor/fin_pointed.hpp"

#include <sstream>

#include "dendrotensor/error.hpp"

namespace dendrotensor {

FinMap FinMap::identity(std::size_t n) {
  FinMap f{n, n, {}};
  for (std::size_t i = 0; i < n; ++i) f.values.emplace_back(i);
  return f;
}

FinMap FinMap::rho(std::size_t i, std::size_t n) {
  if (i >= n) throw DomainError("rho index out of range");
  FinMap f{n, 1, std::vector<std::optional<std::size_t>>(n)};
  f.values[i] = 0;
  return f;
}

FinMap FinMap::make(std::size_t source, std::size_t target,
                    std::vector<std::optional<std::size_t>> values) {
  if (values.size() != source) throw DomainError("pointed map is not total");
  for (const auto& v : values)
    if (v && *v >= target) throw DomainError("pointed map lands outside its target");
  return FinMap{source, target, std::move(values)};
}

bool FinMap::is_inert() const {
  std::vector<std::size_t> count(target, 0);
  for (const auto& v : values)
    if (v) ++count[*v];
  for (auto c : count)
    if (c != 1) return false;
  return true;
}

bool FinMap::is_active() const {
  for (const auto& v : values)
    if (!v) return false;
  return true;
}

std::vector<std::vector<std::size_t>> FinMap::fibers() const {
  std::vector<std::size_t> sizes(target, 0);
  for (const auto& v : values)
    if (v) ++sizes[*v];
  std::vector<std::vector<std::size_t>> out(target);
  for (std::size_t j = 0; j < target; ++j) out[j].reserve(sizes[j]);
  for (std::size_t i = 0; i < source; ++i)
    if (values[i]) out[*values[i]].push_back(i);
  return out;
}

std::string to_string(FinKind k) {
  switch (k) {
    case FinKind::Inert: return "inert";
    case FinKind::Active: return "active";
    case FinKind::Both: return "both";
    case FinKind::Neither: return "neither";
  }
  return "neither";
}

FinKind classify(const FinMap& f) {
  const bool inert = f.is_inert(), active = f.is_active();
  if (inert && active) return FinKind::Both;
  if (inert) return FinKind::Inert;
  if (active) return FinKind::Active;
  return FinKind::Neither;
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.target != g.source) throw DomainError("pointed maps are not composable");
  FinMap out{f.source, g.target, {}};
  out.values.reserve(f.values.size());
  for (const auto& v : f.values) out.values.push_back(v ? g.values[*v] : std::nullopt);
  return out;
}

Factorization factorize(const FinMap& f) {
  Factorization out;
  std::vector<std::size_t> survivors;
  out.inert.source = f.source;
  for (std::size_t i = 0; i < f.source; ++i) {
    if (f.values[i]) {
      out.inert.values.emplace_back(survivors.size());
      survivors.push_back(i);
    } else {
      out.inert.values.emplace_back(std::nullopt);
    }
  }
  out.inert.target = survivors.size();
  out.active = FinMap{survivors.size(), f.target, {}};
  for (auto i : survivors) out.active.values.push_back(f.values[i]);
  return out;
}

std::size_t smash(std::size_t m, std::size_t n) { return m * n; }

FinMap smash(const FinMap& f, const FinMap& g) {
  FinMap out{f.source * g.source, f.target * g.target, {}};
  for (std::size_t i = 0; i < f.source; ++i) {
    for (std::size_t j = 0; j < g.source; ++j) {
      if (f.values[i] && g.values[j])
        out.values.emplace_back(*f.values[i] * g.target + *g.values[j]);
      else
        out.values.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::vector<FinMap> all_fin_maps(std::size_t m, std::size_t n) {
  std::vector<FinMap> out;
  std::vector<std::size_t> digits(m, 0);  // 0 is the basepoint, k is element k-1
  while (true) {
    FinMap f{m, n, {}};
    for (auto d : digits) f.values.push_back(d == 0 ? std::nullopt : std::optional<std::size_t>(d - 1));
    out.push_back(std::move(f));
    std::size_t k = m;
    while (true) {
      if (k == 0) return out;
      --k;
      if (++digits[k] <= n) break;
      digits[k] = 0;
    }
  }
}

std::vector<FinMap> inert_maps(std::size_t m, std::size_t n) {
  std::vector<FinMap> out;
  for (auto& f : all_fin_maps(m, n))
    if (f.is_inert()) out.push_back(std::move(f));
  return out;
}

std::string to_string(const FinMap& f) {
  std::ostringstream os;
  os << f.source << ':' << f.target << ':';
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) os << ',';
    if (f.values[i])
      os << *f.values[i] + 1;
    else
      os << '*';
  }
  return os.str();
}

FinMap parse_fin_map(const std::string& text) {
  auto c1 = text.find(':');
  auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ParseError("expected m:n:values in '" + text + "'");
  std::size_t m = 0, n = 0;
  try {
    m = std::stoul(text.substr(0, c1));
    n = std::stoul(text.substr(c1 + 1, c2 - c1 - 1));
  } catch (const std::exception&) {
    throw ParseError("bad sizes in '" + text + "'");
  }
  std::vector<std::optional<std::size_t>> values;
  std::string rest = text.substr(c2 + 1);
  std::size_t start = 0;
  while (m > 0 && start <= rest.size()) {
    auto comma = rest.find(',', start);
    std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item == "*") {
      values.emplace_back(std::nullopt);
    } else {
      std::size_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(item, &used);
        if (used != item.size() || v == 0) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ParseError("bad value '" + item + "' in '" + text + "'");
      }
      values.emplace_back(v - 1);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  try {
    return FinMap::make(m, n, std::move(values));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace dendrotensor
