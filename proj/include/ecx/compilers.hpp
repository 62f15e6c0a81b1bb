/*!
  \file compilers.hpp
  \brief Low-energy circuit generators

  - `compile_linear`: decision tree to circuit, one AND gate per tree node
    on a 1-reaching branch; energy at most (variables queried) - 2 + 2 depth.
  - `compile_quadratic`: level-by-level recording of the branch taken,
    energy at most D^2/2 + 5D/2 - 2 for an optimal tree of depth D >= 1.
  - `build_or_sqrt`: OR_n in blocks of ceil(sqrt n) variables, each block
    switching off every later block.
  - `build_addr` / `build_eaddr`: address and extended address functions.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "circuit.hpp"
#include "decision_tree.hpp"
#include "measures.hpp"
#include "simulate.hpp"

namespace ecx
{

/*!
  \brief Balanced OR tree over `sources` (m - 1 gates).

  Every source sits at depth floor(log2 m) or ceil(log2 m), so when at most
  one source is 1 at most ceil(log2 m) gadget gates are activated.
*/
inline gate_id or_gadget_onehot( circuit_builder& b, std::span<gate_id const> sources )
{
  if ( sources.empty() )
  {
    throw domain_error( "OR gadget needs at least one source" );
  }
  if ( sources.size() == 1u )
  {
    return sources.front();
  }
  auto const half = ( sources.size() + 1u ) / 2u;
  auto const left = or_gadget_onehot( b, sources.first( half ) );
  auto const right = or_gadget_onehot( b, sources.subspan( half ) );
  return b.add_or( left, right );
}

/*!
  \brief OR tree minimizing max(weight + depth) over the sources.

  Under a one-hot promise the active source pays its depth in activated OR
  gates; `weights` is the energy already spent on the way to that source.
  Built greedily by repeatedly joining the two lightest subtrees, with ties
  broken by creation order.
*/
inline gate_id or_gadget_weighted( circuit_builder& b, std::span<gate_id const> sources, std::span<uint32_t const> weights )
{
  if ( sources.empty() || sources.size() != weights.size() )
  {
    throw domain_error( "weighted OR gadget needs one weight per source and at least one source" );
  }
  using item = std::tuple<uint32_t, std::size_t, gate_id>;
  std::priority_queue<item, std::vector<item>, std::greater<>> heap;
  std::size_t seq = 0;
  for ( std::size_t i = 0; i < sources.size(); ++i )
  {
    heap.emplace( weights[i], seq++, sources[i] );
  }
  while ( heap.size() > 1u )
  {
    auto const [wa, sa, ga] = heap.top();
    heap.pop();
    auto const [wb, sb, gb] = heap.top();
    heap.pop();
    heap.emplace( std::max( wa, wb ) + 1u, seq++, b.add_or( ga, gb ) );
  }
  return std::get<2>( heap.top() );
}

namespace detail
{

inline circuit constant_circuit( uint32_t num_vars, bool value )
{
  circuit_builder b( num_vars );
  for ( uint32_t i = 0; i < num_vars; ++i )
  {
    b.add_input( i );
  }
  auto const k = b.add_constant( value );
  return std::move( b ).build( k );
}

inline bool reaches_one( decision_tree const& t )
{
  return t.is_leaf() ? t.value() : ( reaches_one( t.low() ) || reaches_one( t.high() ) );
}

} // namespace detail

/*! \brief A `compile_linear` circuit with the role of its gates exposed for instrumented checks. */
struct linear_compilation
{
  circuit result;
  /* AND gates of two sibling tree nodes, created when both children reach a 1-leaf */
  std::vector<std::pair<gate_id, gate_id>> siblings;
  /* gates standing for 1-leaves, the sources of the final OR */
  std::vector<gate_id> one_leaves;
};

/*!
  \brief Circuit that is 1 at a tree node's gate iff evaluation visits that node.

  The root's children are realized by the literals of the root variable; a
  deeper node is the AND of its parent's gate and the literal of the
  parent's variable. NOT gates are created per variable on first use, and
  nodes whose subtree holds no 1-leaf get no gate. The 1-leaf gates are
  joined by `or_gadget_onehot`. Input gates for all `num_vars` variables
  come first.
*/
inline linear_compilation compile_linear_detailed( decision_tree const& tree, uint32_t num_vars )
{
  for ( auto v : queried_variables( tree ) )
  {
    if ( v >= num_vars )
    {
      throw domain_error( "tree queries x" + std::to_string( v + 1u ) + " beyond " + std::to_string( num_vars ) + " variables" );
    }
  }
  if ( tree.is_leaf() )
  {
    return { detail::constant_circuit( num_vars, tree.value() ), {}, {} };
  }

  circuit_builder b( num_vars );
  std::vector<gate_id> inputs( num_vars );
  for ( uint32_t i = 0; i < num_vars; ++i )
  {
    inputs[i] = b.add_input( i );
  }
  std::vector<std::optional<gate_id>> negated( num_vars );
  auto neg = [&]( uint32_t v ) {
    if ( !negated[v] )
    {
      negated[v] = b.add_not( inputs[v] );
    }
    return *negated[v];
  };

  linear_compilation out{ circuit( 0u, { gate::constant( false ) }, 0u ), {}, {} };
  auto visit = [&]( auto&& self, decision_tree const& node, gate_id here ) -> void {
    if ( node.is_leaf() )
    {
      out.one_leaves.push_back( here );
      return;
    }
    std::optional<gate_id> lo, hi;
    if ( detail::reaches_one( node.low() ) )
    {
      lo = b.add_and( here, neg( node.var() ) );
      self( self, node.low(), *lo );
    }
    if ( detail::reaches_one( node.high() ) )
    {
      hi = b.add_and( here, inputs[node.var()] );
      self( self, node.high(), *hi );
    }
    if ( lo && hi )
    {
      out.siblings.emplace_back( *lo, *hi );
    }
  };

  auto const r = tree.var();
  std::optional<gate_id> lo, hi;
  if ( detail::reaches_one( tree.low() ) )
  {
    lo = neg( r );
    visit( visit, tree.low(), *lo );
  }
  if ( detail::reaches_one( tree.high() ) )
  {
    hi = inputs[r];
    visit( visit, tree.high(), *hi );
  }
  if ( lo && hi )
  {
    out.siblings.emplace_back( *lo, *hi );
  }

  gate_id const o = out.one_leaves.empty() ? b.add_constant( false ) : or_gadget_onehot( b, out.one_leaves );
  out.result = std::move( b ).build( o );
  return out;
}

inline circuit compile_linear( decision_tree const& tree, uint32_t num_vars )
{
  return compile_linear_detailed( tree, num_vars ).result;
}

/*! \brief Energy bound for `compile_linear` on a tree of `depth` querying `vars_used` variables. */
inline int64_t linear_energy_bound( uint32_t vars_used, uint32_t depth )
{
  return depth == 0u ? 0 : int64_t( vars_used ) - 2 + 2 * int64_t( depth );
}

/*! \brief D^2/2 + 5D/2 - 2 for D >= 1, and 0 for constants. */
inline int64_t quadratic_energy_bound( uint32_t depth )
{
  return depth == 0u ? 0 : int64_t( depth ) * ( depth + 5 ) / 2 - 2;
}

struct quadratic_compilation
{
  circuit result;
  uint32_t depth = 0;
  decision_tree tree;
  /* selectors[k - 1][z]: the gate that is 1 iff the first k branches taken spell z (absent gates are omitted) */
  std::vector<std::vector<gate_id>> selectors;
  /* gate holding y_{k+1}, the branch taken at level k + 1 */
  std::vector<gate_id> level_values;
};

/*!
  \brief Circuit that records the branch taken at every level of an optimal tree.

  The tree is padded to uniform depth D. y_1 is the root literal; for each
  level k < D the selectors M_{k,z} (1 iff the branches so far spell z) pick
  the variable queried at node z, y_{k+1} = OR_z (M_{k,z} AND x_{label(z)}),
  and M_{k+1,zb} = M_{k,z} AND (y_{k+1} or its negation). The output ORs the
  selectors of the 1-leaves; that last OR is weighted by the energy each
  selector's path has already spent.
*/
inline quadratic_compilation compile_quadratic_detailed( truth_table const& f, uint32_t cap = 12u )
{
  if ( f.num_vars() > cap )
  {
    throw cap_exceeded( "quadratic compilation limited to " + std::to_string( cap ) + " variables" );
  }
  auto const [depth, tree] = decision_tree_complexity( f );
  quadratic_compilation out{ detail::constant_circuit( f.num_vars(), f.is_const1() ), depth, tree, {}, {} };
  if ( depth == 0u )
  {
    return out;
  }
  auto const padded = pad_to_uniform_depth( tree, depth );

  circuit_builder b( f.num_vars() );
  std::vector<gate_id> inputs( f.num_vars() );
  for ( uint32_t i = 0; i < f.num_vars(); ++i )
  {
    inputs[i] = b.add_input( i );
  }

  std::vector<decision_tree> nodes{ padded.low(), padded.high() };
  auto const y1 = inputs[padded.var()];
  out.level_values.push_back( y1 );

  /* absent entries are selectors nothing would read */
  std::vector<std::optional<gate_id>> select( 2u );
  if ( depth >= 2u || nodes[0].value() )
  {
    select[0] = b.add_not( y1 );
  }
  select[1] = y1;
  auto record = [&]() {
    std::vector<gate_id> level;
    for ( auto const& s : select )
    {
      if ( s )
      {
        level.push_back( *s );
      }
    }
    out.selectors.push_back( std::move( level ) );
  };
  record();

  for ( uint32_t k = 1; k < depth; ++k )
  {
    std::vector<gate_id> products;
    products.reserve( nodes.size() );
    for ( std::size_t z = 0; z < nodes.size(); ++z )
    {
      products.push_back( b.add_and( *select[z], inputs[nodes[z].var()] ) );
    }
    auto const y = or_gadget_onehot( b, products );
    auto const ybar = b.add_not( y );
    out.level_values.push_back( y );

    std::vector<decision_tree> next_nodes;
    std::vector<std::optional<gate_id>> next_select;
    bool const last = k + 1u == depth;
    for ( std::size_t z = 0; z < nodes.size(); ++z )
    {
      for ( bool bit : { false, true } )
      {
        auto child = bit ? nodes[z].high() : nodes[z].low();
        if ( last && !child.value() )
        {
          next_select.emplace_back();
        }
        else
        {
          next_select.emplace_back( b.add_and( *select[z], bit ? y : ybar ) );
        }
        next_nodes.push_back( std::move( child ) );
      }
    }
    nodes = std::move( next_nodes );
    select = std::move( next_select );
    record();
  }

  /* energy spent before the final OR when the branches taken spell z (y_1 first, most significant) */
  auto prefix_energy = [depth]( uint64_t z ) {
    uint32_t e = ( ( z >> ( depth - 1u ) ) & 1u ) ? 0u : 1u;
    for ( uint32_t j = 2; j <= depth; ++j )
    {
      e += ( ( z >> ( depth - j ) ) & 1u ) ? j + 1u : 2u;
    }
    return e;
  };

  std::vector<gate_id> ones;
  std::vector<uint32_t> weights;
  for ( std::size_t z = 0; z < nodes.size(); ++z )
  {
    if ( nodes[z].value() )
    {
      ones.push_back( *select[z] );
      weights.push_back( prefix_energy( z ) );
    }
  }
  auto const o = ones.empty() ? b.add_constant( false ) : or_gadget_weighted( b, ones, weights );
  out.result = std::move( b ).build( o );
  return out;
}

inline circuit compile_quadratic( truth_table const& f )
{
  return compile_quadratic_detailed( f ).result;
}

inline uint32_t ceil_sqrt( uint32_t n )
{
  uint32_t b = 0;
  while ( b * b < n )
  {
    ++b;
  }
  return b;
}

inline uint32_t floor_sqrt( uint32_t n )
{
  uint32_t b = 0;
  while ( ( b + 1u ) * ( b + 1u ) <= n )
  {
    ++b;
  }
  return b;
}

/*!
  \brief OR_n from ceil(sqrt n)-sized blocks.

  Block 1 is a balanced OR tree g_1. For every later block i, h_{i-1} =
  NOT g_{i-1} gates each of its variables through an AND, the ANDs are
  joined into g'_i and g_i = g_{i-1} OR g'_i. Once a block sees a 1, every
  later block is switched off.
*/
inline circuit build_or_sqrt( uint32_t n )
{
  if ( n == 0u )
  {
    throw domain_error( "OR needs at least one variable" );
  }
  auto const block = ceil_sqrt( n );
  circuit_builder b( n );
  std::vector<gate_id> inputs( n );
  for ( uint32_t i = 0; i < n; ++i )
  {
    inputs[i] = b.add_input( i );
  }
  auto const first_end = std::min( n, block );
  auto g = or_gadget_onehot( b, std::span<gate_id const>( inputs ).first( first_end ) );
  for ( uint32_t start = block; start < n; start += block )
  {
    auto const end = std::min( n, start + block );
    auto const h = b.add_not( g );
    std::vector<gate_id> gated;
    for ( uint32_t i = start; i < end; ++i )
    {
      gated.push_back( b.add_and( inputs[i], h ) );
    }
    auto const gp = or_gadget_onehot( b, gated );
    g = b.add_or( g, gp );
  }
  return std::move( b ).build( g );
}

/*! \brief 4 ceil(sqrt n) + 4, the energy audit ceiling for `build_or_sqrt`. */
inline int64_t or_sqrt_energy_bound( uint32_t n )
{
  return 4 * int64_t( ceil_sqrt( n ) ) + 4;
}

/*! \brief Tree querying x_1..x_n level by level and then the addressed cell. */
inline decision_tree natural_addr_tree( uint32_t n )
{
  address_num_vars( n );
  auto rec = [n]( auto&& self, uint32_t level, uint64_t prefix ) -> decision_tree {
    if ( level == n )
    {
      return decision_tree::query( static_cast<uint32_t>( n + prefix ), decision_tree::leaf( false ), decision_tree::leaf( true ) );
    }
    return decision_tree::query( level, self( self, level + 1u, prefix << 1 ), self( self, level + 1u, ( prefix << 1 ) | 1u ) );
  };
  return rec( rec, 0u, 0u );
}

/*! \brief `compile_linear` on the natural address tree with unused gates removed. */
inline circuit build_addr( uint32_t n )
{
  auto const vars = address_num_vars( n );
  return prune_dead( compile_linear( natural_addr_tree( n ), vars ) );
}

struct eaddr_construction
{
  circuit result;
  /* the two modified address circuits, standalone over the same variables */
  circuit c0;
  circuit c1;
};

/*!
  \brief Two address circuits sharing the x inputs.

  In C1 a cell whose address has g = 0 reads constant 0; in C0 a cell whose
  address has g = 1 reads constant 1. The output is NOT(C0) OR C1.
*/
inline eaddr_construction build_eaddr_detailed( uint32_t n, truth_table const& g )
{
  if ( g.num_vars() != n )
  {
    throw domain_error( "selector function must have " + std::to_string( n ) + " variables, got " + std::to_string( g.num_vars() ) );
  }
  auto const vars = address_num_vars( n );
  auto const addr = build_addr( n );

  /* g value of each cell, by address */
  std::vector<bool> cell_g( std::size_t( 1 ) << n );
  for ( uint64_t k = 0; k < cell_g.size(); ++k )
  {
    cell_g[address_of( n, k )] = g[k];
  }

  auto instantiate = [&]( circuit_builder& b, std::vector<gate_id> const& inputs, bool copy_one ) {
    std::optional<gate_id> konst;
    auto var_map = inputs;
    for ( std::size_t a = 0; a < cell_g.size(); ++a )
    {
      if ( cell_g[a] != copy_one )
      {
        if ( !konst )
        {
          konst = b.add_constant( !copy_one );
        }
        var_map[n + a] = *konst;
      }
    }
    return b.append( addr, var_map );
  };
  auto fresh = [&]( circuit_builder& b ) {
    std::vector<gate_id> inputs( vars );
    for ( uint32_t i = 0; i < vars; ++i )
    {
      inputs[i] = b.add_input( i );
    }
    return inputs;
  };

  circuit_builder b( vars );
  auto const inputs = fresh( b );
  auto const out0 = instantiate( b, inputs, false );
  auto const out1 = instantiate( b, inputs, true );
  auto const neg = b.add_not( out0 );
  auto const o = b.add_or( neg, out1 );

  circuit_builder b0( vars ), b1( vars );
  auto const o0 = instantiate( b0, fresh( b0 ), false );
  auto const o1 = instantiate( b1, fresh( b1 ), true );
  return { std::move( b ).build( o ), std::move( b0 ).build( o0 ), std::move( b1 ).build( o1 ) };
}

inline circuit build_eaddr( uint32_t n, truth_table const& g )
{
  return build_eaddr_detailed( n, g ).result;
}

struct compile_stats
{
  std::size_t gates_total = 0;
  std::size_t not_gates = 0;
  uint32_t measured_energy = 0;
  bool exhaustive = false;
  int64_t bound_claimed = 0;
  bool bound_satisfied = false;
};

/*! \brief Measures `c` (exhaustively when it has at most `cap` variables, else by sampling) against `bound`. */
inline compile_stats audit_compilation( circuit const& c, int64_t bound, uint32_t cap = 20u, sampled_search const& fallback = {} )
{
  compile_stats s;
  s.gates_total = c.num_gates();
  s.not_gates = count_not_gates( c );
  s.exhaustive = c.num_vars() <= cap;
  s.measured_energy = s.exhaustive ? max_energy( c, exhaustive_search{ cap } ).max_energy : max_energy( c, fallback ).max_energy;
  s.bound_claimed = bound;
  s.bound_satisfied = int64_t( s.measured_energy ) <= bound;
  return s;
}

} // namespace ecx
