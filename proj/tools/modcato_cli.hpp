#pragma once

// Command line front end. run() writes to the given streams so tests can
// drive it in-process; output is assembled first and printed at the end so
// a failing command never leaves a partial table behind.

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "modcato/modcato.hpp"

namespace modcato::cli {

enum ExitCode { ok = 0, verification_failed = 1, usage = 2, internal = 3 };

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline Weight parse_weight(const RootSystem& rs, const std::string& text) {
  std::vector<Coord> c;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    Coord v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) throw InvalidArgument("bad weight '" + text + "'");
    c.push_back(v);
  }
  if (c.size() != rs.rank())
    throw InvalidArgument("weight '" + text + "' needs " + std::to_string(rs.rank()) + " coordinates");
  return Weight(c);
}

/// Weights separated by ';'. In rank one a ',' separates as well.
inline std::set<Weight> parse_set(const RootSystem& rs, const std::string& text) {
  std::set<Weight> out;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    if (rs.rank() == 1)
      for (const auto& w : split(item, ',')) out.insert(parse_weight(rs, w));
    else
      out.insert(parse_weight(rs, item));
  }
  if (out.empty()) throw InvalidArgument("empty weight set");
  return out;
}

struct Options {
  std::string type = "A1";
  std::int64_t p = 0;
  std::string lambda, mu, gamma, set, region;
  Coord depth = -1;
  unsigned l = 1;
  std::string format = "text";
  std::string cache_dir;
};

inline json set_json(const std::set<Weight>& s) {
  json a = json::array();
  for (const auto& w : s) a.push_back(weight_json(w));
  return a;
}

inline std::string set_text(const std::set<Weight>& s) {
  std::string out;
  for (const auto& w : s) out += (out.empty() ? "" : " ") + to_string(w);
  return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characters, decomposition numbers and periodicity checks for modular category O"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--type", o.type, "root system: A1, A2 or B2")->capture_default_str();
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    c->add_option("--cache-dir", o.cache_dir, "persistent cache directory (default: $MODCATO_CACHE)");
  };
  auto need_p = [&](CLI::App* c) { c->add_option("--p", o.p, "prime")->required(); };

  auto* ch = app.add_subcommand("char", "formal characters");
  ch->require_subcommand(1);
  auto* ch_verma = ch->add_subcommand("verma", "ch Delta(lambda) in the box below lambda");
  auto* ch_simple = ch->add_subcommand("simple", "ch L(lambda) in the box below lambda");
  auto* ch_weyl = ch->add_subcommand("weyl", "Weyl character of a dominant weight");
  for (auto* c : {ch_verma, ch_simple, ch_weyl}) {
    common(c);
    c->add_option("--lambda", o.lambda, "highest weight")->required();
  }
  ch_verma->add_option("--depth", o.depth, "box depth")->required();
  ch_simple->add_option("--depth", o.depth, "box depth")->required();
  ch_weyl->add_option("--depth", o.depth, "minimum box depth");
  need_p(ch_simple);

  auto* decomp = app.add_subcommand("decomp", "row of decomposition numbers [Delta(mu):L(lambda)]");
  common(decomp);
  need_p(decomp);
  decomp->add_option("--mu", o.mu, "Verma highest weight")->required();
  decomp->add_option("--depth", o.depth, "box depth below mu");
  decomp->add_option("--region", o.region, "explicit region, ';'-separated weights");

  auto* qmult = app.add_subcommand("qmult", "(Q^J(lambda):Delta(mu))");
  common(qmult);
  qmult->add_option("--lambda", o.lambda, "weight in J")->required();
  qmult->add_option("--ceiling", o.set, "maximal weights of J")->required();

  auto* projmult = app.add_subcommand("projmult", "(P^J(lambda):Delta(mu)) by reciprocity");
  common(projmult);
  need_p(projmult);
  projmult->add_option("--lambda", o.lambda, "weight in J")->required();
  projmult->add_option("--ceiling", o.set, "maximal weights of J")->required();

  auto* stein = app.add_subcommand("steinberg", "compare ch L(lambda) with the twisted tensor product of its digits");
  common(stein);
  need_p(stein);
  stein->add_option("--lambda", o.lambda, "dominant weight")->required();
  stein->add_option("--depth", o.depth, "box depth")->required();

  auto* topo = app.add_subcommand("topology", "order topology helpers");
  topo->require_subcommand(1);
  auto* topo_check = topo->add_subcommand("check", "local closedness and the open sets J, J'");
  auto* topo_minl = topo->add_subcommand("minl", "smallest l with the periodicity condition");
  for (auto* c : {topo_check, topo_minl}) {
    common(c);
    c->add_option("--set", o.set, "weights, ';'-separated")->required();
  }
  need_p(topo_minl);

  auto* per = app.add_subcommand("periodicity", "shift functor checks");
  per->require_subcommand(1);
  auto* per_updown = per->add_subcommand("updown", "U(Delta(lambda)) = Delta(lambda+gamma) and back");
  auto* per_full = per->add_subcommand("full", "decomposition tables over K and K+gamma");
  for (auto* c : {per_updown, per_full}) {
    common(c);
    need_p(c);
    c->add_option("--set", o.set, "locally closed set K")->required();
    c->add_option("--gamma", o.gamma, "dominant weight in p^l X")->required();
    c->add_option("--l", o.l, "exponent l")->capture_default_str();
  }
  per_full->add_option("--depth", o.depth, "box depth")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  std::ostringstream buf;
  bool verified = true;
  try {
    const CartanType type = parse_cartan_type(o.type);
    std::optional<cache::Store> store;
    if (!o.cache_dir.empty())
      store.emplace(o.cache_dir);
    else
      store = cache::Store::from_environment();
    Hyperalgebra alg(type);
    if (store) alg.attach_store(&*store);
    const RootSystem& rs = alg.roots();
    const bool as_json = o.format == "json";
    auto category = [&] { return CategoryO(alg, Prime(o.p)); };

    if (ch_verma->parsed() || ch_simple->parsed() || ch_weyl->parsed()) {
      const Weight lambda = parse_weight(rs, o.lambda);
      FormalCharacter chi;
      if (ch_verma->parsed()) {
        chi = verma_character(rs, lambda, TruncationBox(lambda, o.depth));
      } else if (ch_simple->parsed()) {
        auto cat = category();
        chi = cat.simple_character(lambda, TruncationBox(lambda, o.depth));
      } else {
        chi = weyl_character(rs, lambda, std::max<Coord>(o.depth, 0));
      }
      if (as_json)
        buf << character_json(rs, chi).dump(2) << '\n';
      else
        buf << character_text(rs, chi);
    } else if (decomp->parsed()) {
      auto cat = category();
      const Weight mu = parse_weight(rs, o.mu);
      DecompositionTable t;
      if (!o.region.empty()) {
        auto r = parse_set(rs, o.region);
        t = cat.decomposition_numbers(mu, std::vector<Weight>(r.begin(), r.end()));
      } else {
        if (o.depth < 0) throw InvalidArgument("decomp needs --depth or --region");
        t = cat.decomposition_numbers(mu, o.depth);
      }
      if (as_json)
        buf << table_json(t).dump(2) << '\n';
      else
        buf << table_text(rs, t);
    } else if (qmult->parsed() || projmult->parsed()) {
      const Weight lambda = parse_weight(rs, o.lambda);
      const OpenSet J(parse_set(rs, o.set));
      FlagVector V;
      if (qmult->parsed()) {
        V = q_module_mult(rs, lambda, J);
      } else {
        auto cat = category();
        V = cat.projective_verma_mult(lambda, J);
      }
      if (as_json)
        buf << json{{"lambda", weight_json(lambda)}, {"flag", flag_json(V)}}.dump(2) << '\n';
      else
        buf << flag_table_text(rs, V);
    } else if (stein->parsed()) {
      auto cat = category();
      const Weight lambda = parse_weight(rs, o.lambda);
      const auto res = cat.steinberg_check(lambda, TruncationBox(lambda, o.depth));
      verified = res.pass;
      if (as_json) {
        json digits = json::array();
        for (const auto& d : res.digits) digits.push_back(weight_json(d));
        json diff = json::array();
        for (const auto& [w, c] : res.difference) diff.push_back({{"weight", weight_json(w)}, {"mult", c}});
        buf << json{{"pass", res.pass},
                    {"digits", digits},
                    {"simple", character_json(rs, res.simple)},
                    {"product", character_json(rs, res.product)},
                    {"difference", diff}}
                   .dump(2)
            << '\n';
      } else {
        std::string digits;
        for (const auto& d : res.digits) digits += (digits.empty() ? "" : " ") + to_string(d);
        buf << "digits: " << digits << '\n';
        TextTable t({"weight", "simple", "product"});
        std::set<Weight> ws;
        for (const auto& [w, c] : res.simple.terms()) ws.insert(w);
        for (const auto& [w, c] : res.product.terms()) ws.insert(w);
        std::vector<Weight> sorted(ws.begin(), ws.end());
        std::sort(sorted.begin(), sorted.end(), HigherFirst{&rs});
        for (const auto& w : sorted)
          if (res.simple[w] != 0 || res.product[w] != 0)
            t.add({to_string(w), std::to_string(res.simple[w]), std::to_string(res.product[w])});
        buf << t.str() << (res.pass ? "factorisation holds\n" : "factorisation FAILS\n");
      }
    } else if (topo_check->parsed()) {
      const auto s = parse_set(rs, o.set);
      const bool lc = is_locally_closed(rs, s);
      json j{{"set", set_json(s)}, {"locally_closed", lc}};
      std::string text = "set: " + set_text(s) + "\nlocally closed: " + (lc ? "yes" : "no") + "\n";
      if (lc) {
        const LocallyClosedSet K(rs, s);
        const auto carved = carve_J_Jprime(rs, K);
        j["J_ceiling"] = set_json(carved.J.ceiling());
        text += "J = down-closure of " + set_text(carved.J.ceiling()) + "\nJ' = J minus the set\n";
      }
      if (as_json)
        buf << j.dump(2) << '\n';
      else
        buf << text;
    } else if (topo_minl->parsed()) {
      const auto s = parse_set(rs, o.set);
      const unsigned l = min_l(rs, s, Prime(o.p).value());
      if (as_json)
        buf << json{{"set", set_json(s)}, {"p", o.p}, {"l", l}}.dump(2) << '\n';
      else
        buf << "l = " << l << '\n';
    } else if (per_updown->parsed() || per_full->parsed()) {
      auto cat = category();
      const LocallyClosedSet K(rs, parse_set(rs, o.set));
      const auto ctx = make_shift_context(cat, K, parse_weight(rs, o.gamma), o.l);
      const Report rep = per_updown->parsed() ? verify_updown(cat, ctx) : verify_periodicity(cat, ctx, o.depth);
      verified = rep.passed();
      if (as_json)
        buf << report_json(rep).dump(2) << '\n';
      else
        buf << report_text(rs, rep);
    }
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  }
  out << buf.str();
  return verified ? ok : verification_failed;
}

}  // namespace modcato::cli
