#include <doctest.h>

#include <vector>

#include "dspace/conditions.hpp"
#include "support/generators.hpp"

using namespace dspace;
using namespace dspace::testing;

namespace {

RequestContext ctx_for(const std::string& actor, std::uint64_t clock = 0) {
  RequestContext ctx;
  ctx.actor = OrgId{actor};
  ctx.clock = clock;
  return ctx;
}

// The three-tag purpose universe used by the brute-force clause-pair oracle.
const std::vector<std::string> tags{"a", "b", "c"};

std::vector<std::optional<std::set<std::string>>> all_purpose_clauses() {
  std::vector<std::optional<std::set<std::string>>> out;
  out.push_back(std::nullopt);
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < tags.size(); ++i)
      if (mask & (1u << i)) s.insert(tags[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("a fully omitted condition admits any context") {
  CHECK(satisfies(Condition{}, ctx_for("o1")));
  CHECK(satisfies(Condition{}, ctx_for("o9", 42)));
}

TEST_CASE("allowed_orgs membership is required when present") {
  Condition c;
  c.allowed_orgs = std::set<OrgId>{OrgId{"o1"}};
  CHECK_FALSE(satisfies(c, ctx_for("o2")));
  CHECK(satisfies(c, ctx_for("o1")));
}

TEST_CASE("window clause is inclusive at both ends") {
  Condition c;
  c.valid_window = ClockWindow{3, 7};
  // Expected values frozen from the interval oracle: clock in {0..10},
  // satisfied exactly when 3 <= clock <= 7.
  for (std::uint64_t clock = 0; clock <= 10; ++clock) {
    bool oracle = clock >= 3 && clock <= 7;
    CHECK(satisfies(c, ctx_for("o1", clock)) == oracle);
  }
}

TEST_CASE("wildcard pair is compatible") {
  CHECK(compatible(Condition{}, Condition{}, ctx_for("o1")));
}

TEST_CASE("user purposes exceeding provider purposes are incompatible") {
  Condition p;
  p.purposes = std::set<std::string>{"analytics"};
  Condition u;
  u.purposes = std::set<std::string>{"analytics", "resale"};
  CHECK_FALSE(compatible(p, u, ctx_for("o1")));
}

TEST_CASE("nested windows are compatible") {
  Condition p;
  p.valid_window = ClockWindow{0, 10};
  Condition u;
  u.valid_window = ClockWindow{2, 5};
  CHECK(compatible(p, u, ctx_for("o1", 3)));
}

TEST_CASE("purpose clause pairs match the subset oracle") {
  RequestContext ctx = ctx_for("o1");
  for (const auto& p_clause : all_purpose_clauses()) {
    for (const auto& u_clause : all_purpose_clauses()) {
      Condition p, u;
      p.purposes = p_clause;
      u.purposes = u_clause;
      // Independent oracle: with no requested purpose the provider clause is
      // vacuous, so compatibility reduces to subset implication.
      bool oracle = true;
      if (u_clause && p_clause)
        oracle = std::includes(p_clause->begin(), p_clause->end(),
                               u_clause->begin(), u_clause->end());
      CAPTURE(p_clause.has_value());
      CAPTURE(u_clause.has_value());
      CHECK(compatible(p, u, ctx) == oracle);
    }
  }
}

TEST_CASE("window clause pairs match the interval oracle") {
  for (std::uint64_t ps = 0; ps <= 4; ++ps)
    for (std::uint64_t pe = ps; pe <= 4; ++pe)
      for (std::uint64_t us = 0; us <= 4; ++us)
        for (std::uint64_t ue = us; ue <= 4; ++ue)
          for (std::uint64_t clock = 0; clock <= 5; ++clock) {
            Condition p, u;
            p.valid_window = ClockWindow{ps, pe};
            u.valid_window = ClockWindow{us, ue};
            bool oracle = (clock >= ps && clock <= pe) &&  // provider admits
                          (ps <= us && ue <= pe);          // user window nested
            CAPTURE(ps);
            CAPTURE(pe);
            CAPTURE(us);
            CAPTURE(ue);
            CAPTURE(clock);
            CHECK(compatible(p, u, ctx_for("o1", clock)) == oracle);
          }
}

TEST_CASE("user required_social is established by subject facts") {
  Condition u;
  u.required_social = SocialMechId{"s1"};
  RequestContext ctx = ctx_for("o2");
  CHECK_FALSE(compatible(Condition{}, u, ctx));
  ctx.subject_socials.insert(SocialMechId{"s1"});
  CHECK(compatible(Condition{}, u, ctx));
}

TEST_CASE("removing a provider clause never breaks compatibility") {
  Gen g(0x5eed02);
  std::vector<OrgId> orgs{OrgId{"o1"}, OrgId{"o2"}, OrgId{"o3"}};
  std::vector<SocialMechId> socials{SocialMechId{"s1"}, SocialMechId{"s2"}};
  for (int i = 0; i < 600; ++i) {
    Condition p = random_condition(g, orgs, socials);
    Condition u = random_condition(g, orgs, socials);
    RequestContext ctx;
    ctx.actor = g.pick(orgs);
    ctx.clock = g.between(0, 12);
    ctx.uses_so_far = g.between(0, 4);
    if (g.chance(0.5)) ctx.purpose = g.pick(purpose_pool);
    for (const auto& s : socials)
      if (g.chance(0.5)) ctx.actor_credentials.insert(s);
    for (const auto& s : socials)
      if (g.chance(0.5)) ctx.subject_socials.insert(s);

    bool before = compatible(p, u, ctx);
    auto weakened = [&](Condition c) {
      // Each variant drops one clause; wildcard is the lattice top.
      std::vector<Condition> out;
      Condition v = c;
      if (v.allowed_orgs) {
        v.allowed_orgs.reset();
        out.push_back(v);
        v = c;
      }
      if (v.purposes) {
        v.purposes.reset();
        out.push_back(v);
        v = c;
      }
      if (v.valid_window) {
        v.valid_window.reset();
        out.push_back(v);
        v = c;
      }
      if (v.required_social) {
        v.required_social.reset();
        out.push_back(v);
        v = c;
      }
      if (v.max_uses) {
        v.max_uses.reset();
        out.push_back(v);
      }
      return out;
    };
    for (const Condition& relaxed : weakened(p)) {
      if (before) {
        CAPTURE(i);
        CHECK(compatible(relaxed, u, ctx));
      }
    }
  }
}

TEST_CASE("self-compatibility equals satisfaction for provider-evaluable clauses") {
  Gen g(0x5eed03);
  std::vector<OrgId> orgs{OrgId{"o1"}, OrgId{"o2"}};
  std::vector<SocialMechId> socials{SocialMechId{"s1"}};
  for (int i = 0; i < 400; ++i) {
    Condition c = random_condition(g, orgs, socials);
    c.required_social.reset();  // the one clause with dual-sided semantics
    RequestContext ctx;
    ctx.actor = g.pick(orgs);
    ctx.clock = g.between(0, 12);
    ctx.uses_so_far = g.between(0, 4);
    if (g.chance(0.5)) ctx.purpose = g.pick(purpose_pool);
    CHECK(compatible(c, c, ctx) == satisfies(c, ctx));
  }
}

TEST_CASE("evaluation is deterministic") {
  Condition p;
  p.purposes = std::set<std::string>{"analytics"};
  p.valid_window = ClockWindow{0, 5};
  RequestContext ctx = ctx_for("o1", 2);
  ctx.purpose = "analytics";
  bool first = compatible(p, Condition{}, ctx);
  for (int i = 0; i < 10; ++i) CHECK(compatible(p, Condition{}, ctx) == first);
}
