/*!
  \file decision_tree.hpp
  \brief Immutable binary decision trees

  A query on variable i follows `low` when x_i = 0 and `high` when x_i = 1.
  Nodes are shared and never mutated, so copies are cheap.

  Text form is an s-expression, `(x3 (x1 0 1) 1)`, where `xK` names variable
  K-1: labels are one-based like the mathematical x_1, ..., x_n.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "truth_table.hpp"

namespace ecx
{

class decision_tree
{
  struct node
  {
    bool leaf;
    bool value;
    uint32_t var;
    uint32_t depth;
    std::size_t hash;
    std::shared_ptr<node const> low;
    std::shared_ptr<node const> high;
  };

  explicit decision_tree( std::shared_ptr<node const> n ) : root_( std::move( n ) ) {}

public:
  /*! \brief The constant-0 leaf. */
  decision_tree() : decision_tree( leaf( false ) ) {}

  static decision_tree leaf( bool value )
  {
    static auto const zero = std::make_shared<node const>( node{ true, false, 0u, 0u, 0x51u, nullptr, nullptr } );
    static auto const one = std::make_shared<node const>( node{ true, true, 0u, 0u, 0xa7u, nullptr, nullptr } );
    return decision_tree( value ? one : zero );
  }

  static decision_tree query( uint32_t var, decision_tree const& low, decision_tree const& high )
  {
    std::size_t h = var * 0x9e3779b97f4a7c15ull;
    h ^= low.root_->hash + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
    h ^= ( high.root_->hash * 31u ) + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
    auto const d = 1u + std::max( low.root_->depth, high.root_->depth );
    return decision_tree( std::make_shared<node const>( node{ false, false, var, d, h, low.root_, high.root_ } ) );
  }

  bool is_leaf() const noexcept { return root_->leaf; }
  bool value() const noexcept { return root_->value; }
  uint32_t var() const noexcept { return root_->var; }
  decision_tree low() const { return decision_tree( root_->low ); }
  decision_tree high() const { return decision_tree( root_->high ); }

  /*! \brief Longest root-to-leaf query count. */
  uint32_t depth() const noexcept { return root_->depth; }

  std::size_t hash() const noexcept { return root_->hash; }

  std::size_t num_nodes() const
  {
    return is_leaf() ? 1u : 1u + low().num_nodes() + high().num_nodes();
  }

  bool evaluate( assignment const& x ) const
  {
    node const* n = root_.get();
    while ( !n->leaf )
    {
      if ( n->var >= x.size() )
      {
        throw domain_error( "tree queries variable " + std::to_string( n->var ) + " beyond input length " + std::to_string( x.size() ) );
      }
      n = x[n->var] ? n->high.get() : n->low.get();
    }
    return n->value;
  }

  /*! \brief Evaluation on the assignment encoded by a table index (variable i = bit i). */
  bool evaluate_index( uint64_t k ) const noexcept
  {
    node const* n = root_.get();
    while ( !n->leaf )
    {
      n = ( ( k >> n->var ) & 1u ) ? n->high.get() : n->low.get();
    }
    return n->value;
  }

  friend bool operator==( decision_tree const& a, decision_tree const& b ) noexcept
  {
    return same( a.root_.get(), b.root_.get() );
  }

  std::string to_string() const
  {
    std::ostringstream os;
    write( os, root_.get() );
    return os.str();
  }

  static decision_tree from_string( std::string_view text )
  {
    std::size_t pos = 0;
    auto t = parse( text, pos );
    skip_ws( text, pos );
    if ( pos != text.size() )
    {
      throw parse_error( "trailing characters after decision tree" );
    }
    return t;
  }

private:
  static bool same( node const* a, node const* b ) noexcept
  {
    if ( a == b )
    {
      return true;
    }
    if ( a->hash != b->hash || a->leaf != b->leaf || a->depth != b->depth )
    {
      return false;
    }
    if ( a->leaf )
    {
      return a->value == b->value;
    }
    return a->var == b->var && same( a->low.get(), b->low.get() ) && same( a->high.get(), b->high.get() );
  }

  static void write( std::ostream& os, node const* n )
  {
    if ( n->leaf )
    {
      os << ( n->value ? '1' : '0' );
      return;
    }
    os << "(x" << ( n->var + 1u ) << ' ';
    write( os, n->low.get() );
    os << ' ';
    write( os, n->high.get() );
    os << ')';
  }

  static void skip_ws( std::string_view s, std::size_t& pos )
  {
    while ( pos < s.size() && ( s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r' ) )
    {
      ++pos;
    }
  }

  static decision_tree parse( std::string_view s, std::size_t& pos )
  {
    skip_ws( s, pos );
    if ( pos >= s.size() )
    {
      throw parse_error( "unexpected end of decision tree" );
    }
    if ( s[pos] == '0' || s[pos] == '1' )
    {
      return leaf( s[pos++] == '1' );
    }
    if ( s[pos] != '(' )
    {
      throw parse_error( std::string( "unexpected character '" ) + s[pos] + "' in decision tree" );
    }
    ++pos;
    skip_ws( s, pos );
    if ( pos >= s.size() || s[pos] != 'x' )
    {
      throw parse_error( "expected a variable label 'xK'" );
    }
    ++pos;
    uint32_t label = 0;
    auto const start = pos;
    while ( pos < s.size() && s[pos] >= '0' && s[pos] <= '9' )
    {
      label = label * 10u + uint32_t( s[pos++] - '0' );
    }
    if ( pos == start || label == 0u )
    {
      throw parse_error( "variable labels start at x1" );
    }
    auto low = parse( s, pos );
    auto high = parse( s, pos );
    skip_ws( s, pos );
    if ( pos >= s.size() || s[pos] != ')' )
    {
      throw parse_error( "expected ')' in decision tree" );
    }
    ++pos;
    return query( label - 1u, low, high );
  }

  std::shared_ptr<node const> root_;
};

/*! \brief Truth table of the tree over `num_vars` variables. */
inline truth_table to_truth_table( decision_tree const& t, uint32_t num_vars )
{
  return truth_table::from_function( num_vars, [&]( uint64_t k ) { return t.evaluate_index( k ); } );
}

/*! \brief Distinct variables queried anywhere in the tree, ascending. */
inline std::vector<uint32_t> queried_variables( decision_tree const& t )
{
  std::vector<uint32_t> vars;
  auto rec = [&]( auto&& self, decision_tree const& n ) -> void {
    if ( n.is_leaf() )
    {
      return;
    }
    vars.push_back( n.var() );
    self( self, n.low() );
    self( self, n.high() );
  };
  rec( rec, t );
  std::sort( vars.begin(), vars.end() );
  vars.erase( std::unique( vars.begin(), vars.end() ), vars.end() );
  return vars;
}

/*! \brief True iff no variable is queried twice on a root-to-leaf path. */
inline bool is_path_read_once( decision_tree const& t )
{
  std::vector<uint32_t> path;
  auto rec = [&]( auto&& self, decision_tree const& n ) -> bool {
    if ( n.is_leaf() )
    {
      return true;
    }
    if ( std::find( path.begin(), path.end(), n.var() ) != path.end() )
    {
      return false;
    }
    path.push_back( n.var() );
    bool const ok = self( self, n.low() ) && self( self, n.high() );
    path.pop_back();
    return ok;
  };
  return rec( rec, t );
}

namespace detail
{

inline void check_order( truth_table const& f, std::vector<uint32_t> const& order )
{
  std::vector<bool> seen( f.num_vars() );
  for ( auto v : order )
  {
    if ( v >= f.num_vars() || seen[v] )
    {
      throw domain_error( "query order must list distinct variables below " + std::to_string( f.num_vars() ) );
    }
    seen[v] = true;
  }
  for ( uint32_t v = 0; v < f.num_vars(); ++v )
  {
    if ( !seen[v] && f.depends_on( v ) )
    {
      throw domain_error( "query order misses dependent variable x" + std::to_string( v + 1u ) );
    }
  }
}

} // namespace detail

/*!
  \brief Complete tree that queries `order[k]` at level k on every path.

  Variables missing from the order are read as 0 at the leaves; the order
  must contain every variable `f` depends on.
*/
inline decision_tree full_tree_from_order( truth_table const& f, std::vector<uint32_t> const& order )
{
  detail::check_order( f, order );
  auto rec = [&]( auto&& self, std::size_t level, uint64_t index ) -> decision_tree {
    if ( level == order.size() )
    {
      return decision_tree::leaf( f[index] );
    }
    auto const v = order[level];
    return decision_tree::query( v, self( self, level + 1u, index ), self( self, level + 1u, index | ( uint64_t( 1 ) << v ) ) );
  };
  return rec( rec, 0u, 0u );
}

/*! \brief The tree of `full_tree_from_order` built directly, skipping every query the current subfunction ignores. */
inline decision_tree reduced_tree_from_order( truth_table const& f, std::vector<uint32_t> const& order )
{
  detail::check_order( f, order );
  auto rec = [&]( auto&& self, truth_table const& g, std::size_t level ) -> decision_tree {
    if ( g.is_constant() )
    {
      return decision_tree::leaf( g.is_const1() );
    }
    while ( !g.depends_on( order[level] ) )
    {
      ++level;
    }
    auto const v = order[level];
    return decision_tree::query( v, self( self, g.restrict_var( v, false ), level + 1u ), self( self, g.restrict_var( v, true ), level + 1u ) );
  };
  return rec( rec, f, 0u );
}

/*!
  \brief Deletes every query whose two subtrees are identical.

  Works bottom-up, so identical is checked after the subtrees themselves
  have been simplified.
*/
inline decision_tree simplify( decision_tree const& t )
{
  if ( t.is_leaf() )
  {
    return t;
  }
  auto low = simplify( t.low() );
  auto high = simplify( t.high() );
  if ( low == high )
  {
    return low;
  }
  return decision_tree::query( t.var(), low, high );
}

/*!
  \brief Extends every shallow leaf with queries on variable 0 whose two
  children are that leaf, until all leaves sit at `target` depth.
*/
inline decision_tree pad_to_uniform_depth( decision_tree const& t, uint32_t target )
{
  if ( t.depth() > target )
  {
    throw domain_error( "tree depth " + std::to_string( t.depth() ) + " exceeds padding target " + std::to_string( target ) );
  }
  if ( t.is_leaf() )
  {
    auto r = t;
    for ( uint32_t i = 0; i < target; ++i )
    {
      r = decision_tree::query( 0u, r, r );
    }
    return r;
  }
  return decision_tree::query( t.var(), pad_to_uniform_depth( t.low(), target - 1u ), pad_to_uniform_depth( t.high(), target - 1u ) );
}

} // namespace ecx
