/*!
  \file measures.hpp
  \brief Complexity measures of Boolean functions and named function families

  Measures: decision tree complexity D, sensitivity s, positive
  sensitivity psens, block sensitivity bs, certificate complexity C and
  real multilinear degree deg.

  Address functions place the address bits x_1..x_n on variables 0..n-1 and
  the cells y_0..y_{2^n-1} on variables n..n+2^n-1. The address reads x_1 as
  the most significant bit, while table indices read variable 0 as the least
  significant bit.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "decision_tree.hpp"
#include "truth_table.hpp"

namespace ecx
{

inline constexpr uint32_t decision_tree_cap = 14u;
inline constexpr uint32_t block_measure_cap = 12u;

inline std::vector<uint32_t> dependent_vars( truth_table const& f )
{
  std::vector<uint32_t> r;
  for ( uint32_t i = 0; i < f.num_vars(); ++i )
  {
    if ( f.depends_on( i ) )
    {
      r.push_back( i );
    }
  }
  return r;
}

inline bool is_nondegenerate( truth_table const& f )
{
  return dependent_vars( f ).size() == f.num_vars();
}

struct decision_tree_result
{
  uint32_t depth = 0;
  decision_tree tree;
};

namespace detail
{

/*
 * Memoized minimax recursion on subfunctions. A subfunction is stored over
 * exactly the variables it depends on, so identical subfunctions reached
 * along different paths (or over different original variables) share one
 * entry. The entry keeps the depth and the chosen local variable; the tree
 * is rebuilt afterwards by replaying the choices.
 */
class dt_solver
{
  struct entry
  {
    uint8_t depth;
    uint8_t var;
  };

public:
  /* drops the variables g ignores; `vars` lists the original index of each local variable */
  static truth_table shrink( truth_table g, std::vector<uint32_t>& vars )
  {
    for ( uint32_t j = g.num_vars(); j-- > 0u; )
    {
      if ( !g.depends_on( j ) )
      {
        g = g.cofactor( j, false );
        vars.erase( vars.begin() + j );
      }
    }
    return g;
  }

  uint32_t solve( truth_table const& g )
  {
    if ( g.is_constant() )
    {
      return 0u;
    }
    if ( auto it = memo_.find( g ); it != memo_.end() )
    {
      return it->second.depth;
    }
    uint32_t best = g.num_vars() + 1u;
    uint32_t best_var = 0u;
    for ( uint32_t j = 0; j < g.num_vars() && best > 1u; ++j )
    {
      auto const d0 = solve( reduced_cofactor( g, j, false ) );
      if ( 1u + d0 >= best )
      {
        continue;
      }
      auto const d1 = solve( reduced_cofactor( g, j, true ) );
      auto const d = 1u + std::max( d0, d1 );
      if ( d < best )
      {
        best = d;
        best_var = j;
      }
    }
    memo_.emplace( g, entry{ static_cast<uint8_t>( best ), static_cast<uint8_t>( best_var ) } );
    return best;
  }

  decision_tree rebuild( truth_table const& g, std::vector<uint32_t> const& vars ) const
  {
    if ( g.is_constant() )
    {
      return decision_tree::leaf( g.is_const1() );
    }
    auto const j = memo_.at( g ).var;
    auto child = [&]( bool b ) {
      auto sub_vars = vars;
      sub_vars.erase( sub_vars.begin() + j );
      auto const sub = shrink( g.cofactor( j, b ), sub_vars );
      return rebuild( sub, sub_vars );
    };
    return decision_tree::query( vars[j], child( false ), child( true ) );
  }

private:
  static truth_table reduced_cofactor( truth_table const& g, uint32_t j, bool b )
  {
    std::vector<uint32_t> scratch( g.num_vars() - 1u );
    return shrink( g.cofactor( j, b ), scratch );
  }

  std::unordered_map<truth_table, entry> memo_;
};

} // namespace detail

/*!
  \brief D(f) together with one optimal tree.

  Ties between variables are broken towards the smallest index.
*/
inline decision_tree_result decision_tree_complexity( truth_table const& f, uint32_t cap = decision_tree_cap )
{
  if ( f.num_vars() > cap )
  {
    throw cap_exceeded( "decision tree complexity limited to " + std::to_string( cap ) + " variables" );
  }
  std::vector<uint32_t> vars( f.num_vars() );
  for ( uint32_t i = 0; i < f.num_vars(); ++i )
  {
    vars[i] = i;
  }
  auto const g = detail::dt_solver::shrink( f, vars );
  detail::dt_solver solver;
  auto const d = solver.solve( g );
  return { d, solver.rebuild( g, vars ) };
}

inline uint32_t sensitivity( truth_table const& f )
{
  uint32_t best = 0;
  for ( uint64_t x = 0; x < f.size(); ++x )
  {
    uint32_t s = 0;
    for ( uint32_t i = 0; i < f.num_vars(); ++i )
    {
      s += f[x] != f[x ^ ( uint64_t( 1 ) << i )];
    }
    best = std::max( best, s );
  }
  return best;
}

/*! \brief Largest number of sensitive coordinates that are set to 1, over all inputs. */
inline uint32_t positive_sensitivity( truth_table const& f )
{
  uint32_t best = 0;
  for ( uint64_t x = 0; x < f.size(); ++x )
  {
    uint32_t s = 0;
    for ( uint32_t i = 0; i < f.num_vars(); ++i )
    {
      auto const bit = uint64_t( 1 ) << i;
      s += ( x & bit ) && f[x] != f[x ^ bit];
    }
    best = std::max( best, s );
  }
  return best;
}

/*! \brief Exact block sensitivity: per input, the largest packing of disjoint minimal sensitive blocks. */
inline uint32_t block_sensitivity( truth_table const& f )
{
  auto const n = f.num_vars();
  if ( n > block_measure_cap )
  {
    throw cap_exceeded( "block sensitivity limited to " + std::to_string( block_measure_cap ) + " variables" );
  }
  uint64_t const full = f.size();
  std::vector<uint8_t> sensitive( full ), below( full );
  std::vector<std::vector<uint32_t>> by_low( n );
  std::vector<uint8_t> best_pack( full );
  uint32_t best = 0;

  for ( uint64_t x = 0; x < full; ++x )
  {
    uint32_t singles = 0;
    for ( uint32_t i = 0; i < n; ++i )
    {
      singles += f[x] != f[x ^ ( uint64_t( 1 ) << i )];
    }
    if ( singles + ( n - singles ) / 2u <= best )
    {
      continue;
    }
    for ( auto& v : by_low )
    {
      v.clear();
    }
    for ( uint64_t b = 1; b < full; ++b )
    {
      sensitive[b] = f[x] != f[x ^ b];
      uint8_t has = 0;
      for ( auto rest = b; rest != 0u && !has; rest &= rest - 1u )
      {
        auto const sub = b & ~( rest & ( ~rest + 1u ) );
        has = sub != 0u && ( sensitive[sub] || below[sub] );
      }
      below[b] = has;
      if ( sensitive[b] && !has )
      {
        by_low[std::countr_zero( b )].push_back( static_cast<uint32_t>( b ) );
      }
    }
    best_pack[0] = 0;
    for ( uint64_t avail = 1; avail < full; ++avail )
    {
      auto const v = std::countr_zero( avail );
      uint8_t val = best_pack[avail & ( avail - 1u )];
      for ( auto blk : by_low[v] )
      {
        if ( ( blk & ~avail ) == 0u )
        {
          val = std::max<uint8_t>( val, 1u + best_pack[avail & ~uint64_t( blk )] );
        }
      }
      best_pack[avail] = val;
    }
    best = std::max<uint32_t>( best, best_pack[full - 1u] );
  }
  return best;
}

/*! \brief Exact certificate complexity via constancy of every subcube through every input. */
inline uint32_t certificate_complexity( truth_table const& f )
{
  auto const n = f.num_vars();
  if ( n > block_measure_cap )
  {
    throw cap_exceeded( "certificate complexity limited to " + std::to_string( block_measure_cap ) + " variables" );
  }
  uint64_t const full = f.size();
  /* constant[free * full + x]: f is constant on x with the variables in `free` left open */
  std::vector<bool> constant( full * full );
  std::vector<uint32_t> largest_free( full, 0u );
  for ( uint64_t x = 0; x < full; ++x )
  {
    constant[x] = true;
  }
  for ( uint64_t freem = 1; freem < full; ++freem )
  {
    auto const i = std::countr_zero( freem );
    auto const bit = uint64_t( 1 ) << i;
    auto const prev = ( freem & ~bit ) * full;
    auto const here = freem * full;
    auto const size = static_cast<uint32_t>( std::popcount( freem ) );
    for ( uint64_t x = 0; x < full; ++x )
    {
      bool const c = constant[prev + x] && constant[prev + ( x ^ bit )] && f[x] == f[x ^ bit];
      constant[here + x] = c;
      if ( c && size > largest_free[x] )
      {
        largest_free[x] = size;
      }
    }
  }
  uint32_t best = 0;
  for ( uint64_t x = 0; x < full; ++x )
  {
    best = std::max( best, n - largest_free[x] );
  }
  return best;
}

/*! \brief Largest |S| with a nonzero coefficient in the real multilinear expansion. */
inline uint32_t degree( truth_table const& f )
{
  std::vector<int32_t> a( f.size() );
  for ( uint64_t k = 0; k < f.size(); ++k )
  {
    a[k] = f[k] ? 1 : 0;
  }
  for ( uint32_t i = 0; i < f.num_vars(); ++i )
  {
    auto const bit = uint64_t( 1 ) << i;
    for ( uint64_t k = 0; k < f.size(); ++k )
    {
      if ( k & bit )
      {
        a[k] -= a[k ^ bit];
      }
    }
  }
  uint32_t d = 0;
  for ( uint64_t k = 0; k < f.size(); ++k )
  {
    if ( a[k] != 0 )
    {
      d = std::max<uint32_t>( d, std::popcount( k ) );
    }
  }
  return d;
}

struct measure_report
{
  uint32_t num_vars = 0;
  uint32_t d = 0;
  uint32_t s = 0;
  uint32_t psens = 0;
  uint32_t bs = 0;
  uint32_t c = 0;
  uint32_t deg = 0;
  std::vector<uint32_t> dependent;
};

inline measure_report measure_all( truth_table const& f )
{
  measure_report r;
  r.num_vars = f.num_vars();
  r.d = decision_tree_complexity( f ).depth;
  r.s = sensitivity( f );
  r.psens = positive_sensitivity( f );
  r.bs = block_sensitivity( f );
  r.c = certificate_complexity( f );
  r.deg = degree( f );
  r.dependent = dependent_vars( f );
  return r;
}

/* named functions */

inline truth_table constant_fn( uint32_t n, bool value )
{
  return value ? ~truth_table( n ) : truth_table( n );
}

inline truth_table or_fn( uint32_t n )
{
  return truth_table::from_function( n, []( uint64_t k ) { return k != 0u; } );
}

inline truth_table and_fn( uint32_t n )
{
  return truth_table::from_function( n, [n]( uint64_t k ) { return k == ( uint64_t( 1 ) << n ) - 1u; } );
}

inline truth_table xor_fn( uint32_t n )
{
  return truth_table::from_function( n, []( uint64_t k ) { return std::popcount( k ) & 1; } );
}

/*! \brief The literal x_{var} (or its negation) over n variables. */
inline truth_table literal_fn( uint32_t n, uint32_t var, bool positive = true )
{
  return truth_table::from_function( n, [=]( uint64_t k ) { return ( ( k >> var ) & 1u ) == uint64_t( positive ); } );
}

/*! \brief The cell index y_{x_1...x_n} selected by table index `k` (x_1 most significant). */
inline uint64_t address_of( uint32_t n, uint64_t k )
{
  uint64_t a = 0;
  for ( uint32_t i = 0; i < n; ++i )
  {
    a = ( a << 1 ) | ( ( k >> i ) & 1u );
  }
  return a;
}

inline uint32_t address_num_vars( uint32_t n )
{
  if ( n >= 5u || n + ( 1u << n ) > max_table_vars )
  {
    throw cap_exceeded( "address function with " + std::to_string( n ) + " address bits exceeds " + std::to_string( max_table_vars ) + " variables" );
  }
  return n + ( 1u << n );
}

inline truth_table addr_fn( uint32_t n )
{
  return truth_table::from_function( address_num_vars( n ), [n]( uint64_t k ) { return ( k >> ( n + address_of( n, k ) ) ) & 1u; } );
}

/*! \brief The selected cell, negated wherever g(x_1..x_n) = 0; g is indexed like any table (x_1 = bit 0). */
inline truth_table eaddr_fn( uint32_t n, truth_table const& g )
{
  if ( g.num_vars() != n )
  {
    throw domain_error( "selector function must have " + std::to_string( n ) + " variables, got " + std::to_string( g.num_vars() ) );
  }
  uint64_t const xmask = ( uint64_t( 1 ) << n ) - 1u;
  return truth_table::from_function( address_num_vars( n ), [&]( uint64_t k ) {
    bool const y = ( k >> ( n + address_of( n, k ) ) ) & 1u;
    return g[k & xmask] ? y : !y;
  } );
}

} // namespace ecx
