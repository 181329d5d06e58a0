#include "dspace/conditions.hpp"

#include <algorithm>

namespace dspace {

namespace {

template <class T>
bool subset(const std::set<T>& inner, const std::set<T>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

bool satisfies(const Condition& c, const RequestContext& ctx) {
  if (c.allowed_orgs && !c.allowed_orgs->contains(ctx.actor)) return false;
  // An absent purpose requests nothing, which any purpose clause admits.
  if (c.purposes && ctx.purpose && !c.purposes->contains(*ctx.purpose))
    return false;
  if (c.valid_window && !c.valid_window->contains(ctx.clock)) return false;
  if (c.required_social &&
      !ctx.actor_credentials.contains(*c.required_social))
    return false;
  if (c.max_uses && ctx.uses_so_far >= *c.max_uses) return false;
  return true;
}

bool compatible(const Condition& provider, const Condition& user,
                const RequestContext& ctx) {
  if (!satisfies(provider, ctx)) return false;

  // Every user clause must be inside the provider's allowance (an absent
  // provider clause is the top of the lattice) or established by a context
  // fact, in the case of required_social.
  if (user.allowed_orgs && provider.allowed_orgs &&
      !subset(*user.allowed_orgs, *provider.allowed_orgs))
    return false;
  if (user.purposes && provider.purposes &&
      !subset(*user.purposes, *provider.purposes))
    return false;
  if (user.valid_window && provider.valid_window &&
      !(provider.valid_window->start <= user.valid_window->start &&
        user.valid_window->end <= provider.valid_window->end))
    return false;
  if (user.required_social &&
      !ctx.subject_socials.contains(*user.required_social))
    return false;
  if (user.max_uses && provider.max_uses &&
      *user.max_uses > *provider.max_uses)
    return false;
  return true;
}

}  // namespace dspace
