/*!
  \file rewrite.hpp
  \brief Function-preserving rewrites that never increase energy

  Every gate of a rewritten circuit corresponds to at most one gate of the
  original with the same value on every input, so worst-case energy can
  only go down.
*/

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "circuit.hpp"

namespace ecx
{

/*!
  \brief Removes the NOT-gate substructures that waste energy.

  Two NOT gates reading the same gate are merged into one, and a NOT gate
  reading a NOT gate is bypassed by wiring its consumers to the
  grandparent. Gates the output does not cover are pruned.
*/
inline circuit normalize_negations( circuit const& c )
{
  circuit_builder b( c.num_vars() );
  std::vector<gate_id> map( c.num_gates() );
  std::map<gate_id, gate_id> not_of;
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    switch ( gt.kind )
    {
    case gate_kind::input:
    case gate_kind::constant:
      map[g] = b.add( gt );
      break;
    case gate_kind::and_:
      map[g] = b.add_and( map[gt.a], map[gt.b] );
      break;
    case gate_kind::or_:
      map[g] = b.add_or( map[gt.a], map[gt.b] );
      break;
    case gate_kind::not_:
    {
      auto const src = map[gt.a];
      if ( b[src].kind == gate_kind::not_ )
      {
        map[g] = b[src].a;
      }
      else if ( auto it = not_of.find( src ); it != not_of.end() )
      {
        map[g] = it->second;
      }
      else
      {
        map[g] = not_of[src] = b.add_not( src );
      }
      break;
    }
    }
  }
  return prune_dead( std::move( b ).build( map[c.output()] ) );
}

/*! \brief Partial assignment: entry i fixes variable i when engaged. */
using partial_assignment = std::vector<std::optional<bool>>;

/*!
  \brief Substitutes constants for the fixed variables and folds them away.

  The result keeps the same number of variables; fixed ones become
  irrelevant. Constants are absorbed by AND/OR/NOT, so the result contains a
  constant gate only when it computes a constant. Dead gates are pruned.
*/
inline circuit restrict_circuit( circuit const& c, partial_assignment const& fixed )
{
  if ( fixed.size() > c.num_vars() )
  {
    throw domain_error( "partial assignment names " + std::to_string( fixed.size() ) + " variables, circuit has " + std::to_string( c.num_vars() ) );
  }
  struct value
  {
    std::optional<bool> constant;
    gate_id id = 0;
  };

  circuit_builder b( c.num_vars() );
  std::vector<value> map( c.num_gates() );
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    switch ( gt.kind )
    {
    case gate_kind::input:
      if ( gt.a < fixed.size() && fixed[gt.a] )
      {
        map[g].constant = *fixed[gt.a];
      }
      else
      {
        map[g].id = b.add_input( gt.a );
      }
      break;
    case gate_kind::constant:
      map[g].constant = gt.a != 0u;
      break;
    case gate_kind::not_:
      if ( auto const& s = map[gt.a]; s.constant )
      {
        map[g].constant = !*s.constant;
      }
      else
      {
        map[g].id = b.add_not( s.id );
      }
      break;
    case gate_kind::and_:
    case gate_kind::or_:
    {
      bool const is_and = gt.kind == gate_kind::and_;
      auto const& x = map[gt.a];
      auto const& y = map[gt.b];
      /* absorbing element: 0 for AND, 1 for OR */
      if ( ( x.constant && *x.constant != is_and ) || ( y.constant && *y.constant != is_and ) )
      {
        map[g].constant = !is_and;
      }
      else if ( x.constant && y.constant )
      {
        map[g].constant = is_and;
      }
      else if ( x.constant )
      {
        map[g] = y;
      }
      else if ( y.constant )
      {
        map[g] = x;
      }
      else
      {
        map[g].id = is_and ? b.add_and( x.id, y.id ) : b.add_or( x.id, y.id );
      }
      break;
    }
    }
  }
  auto const& out = map[c.output()];
  if ( out.constant )
  {
    circuit_builder k( c.num_vars() );
    auto const id = k.add_constant( *out.constant );
    return std::move( k ).build( id );
  }
  return prune_dead( std::move( b ).build( out.id ) );
}

} // namespace ecx
