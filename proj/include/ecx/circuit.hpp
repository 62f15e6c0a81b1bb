/*!
  \file circuit.hpp
  \brief Single-output circuits over the basis {AND2, OR2, NOT}

  Gates are stored in topological order: every source of gate g has an id
  strictly smaller than g. Input and constant gates are not inner gates and
  never contribute to energy.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ecx
{

using gate_id = uint32_t;

enum class gate_kind : uint8_t
{
  input,
  constant,
  and_,
  or_,
  not_
};

struct gate
{
  gate_kind kind = gate_kind::constant;
  /* var index for inputs, the bit for constants, first source otherwise */
  uint32_t a = 0u;
  /* second source of AND/OR */
  uint32_t b = 0u;

  static gate input( uint32_t var ) { return { gate_kind::input, var, 0u }; }
  static gate constant( bool value ) { return { gate_kind::constant, value ? 1u : 0u, 0u }; }
  static gate and_of( gate_id x, gate_id y ) { return { gate_kind::and_, x, y }; }
  static gate or_of( gate_id x, gate_id y ) { return { gate_kind::or_, x, y }; }
  static gate not_of( gate_id x ) { return { gate_kind::not_, x, 0u }; }

  bool is_inner() const noexcept { return kind == gate_kind::and_ || kind == gate_kind::or_ || kind == gate_kind::not_; }

  uint32_t fanin_size() const noexcept
  {
    switch ( kind )
    {
    case gate_kind::and_:
    case gate_kind::or_:
      return 2u;
    case gate_kind::not_:
      return 1u;
    default:
      return 0u;
    }
  }

  friend bool operator==( gate const&, gate const& ) = default;
};

/*! \brief An input assignment; entry i is the value of variable i. */
using assignment = std::vector<bool>;

inline assignment assignment_from_index( uint32_t num_vars, uint64_t index )
{
  assignment x( num_vars );
  for ( uint32_t i = 0; i < num_vars && i < 64u; ++i )
  {
    x[i] = ( index >> i ) & 1u;
  }
  return x;
}

inline uint64_t assignment_to_index( assignment const& x )
{
  uint64_t k = 0;
  for ( std::size_t i = 0; i < x.size() && i < 64u; ++i )
  {
    k |= uint64_t( x[i] ) << i;
  }
  return k;
}

/*! \brief Parses a bit string whose character i is the value of variable i. */
inline assignment assignment_from_string( std::string_view bits )
{
  assignment x( bits.size() );
  for ( std::size_t i = 0; i < bits.size(); ++i )
  {
    if ( bits[i] != '0' && bits[i] != '1' )
    {
      throw parse_error( std::string( "invalid input bit '" ) + bits[i] + "'" );
    }
    x[i] = bits[i] == '1';
  }
  return x;
}

inline std::string to_string( assignment const& x )
{
  std::string s( x.size(), '0' );
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    if ( x[i] )
    {
      s[i] = '1';
    }
  }
  return s;
}

class circuit
{
public:
  /*! \brief Validates topological order, arities and variable indices. */
  circuit( uint32_t num_vars, std::vector<gate> gates, gate_id output )
      : num_vars_( num_vars ), gates_( std::move( gates ) ), output_( output )
  {
    for ( gate_id g = 0; g < gates_.size(); ++g )
    {
      auto const& gt = gates_[g];
      switch ( gt.kind )
      {
      case gate_kind::input:
        if ( gt.a >= num_vars_ )
        {
          throw domain_error( "gate " + std::to_string( g ) + " reads variable " + std::to_string( gt.a ) + " of a " + std::to_string( num_vars_ ) + "-input circuit" );
        }
        break;
      case gate_kind::constant:
        if ( gt.a > 1u )
        {
          throw domain_error( "gate " + std::to_string( g ) + " has a non-binary constant" );
        }
        break;
      case gate_kind::and_:
      case gate_kind::or_:
        if ( gt.b >= g )
        {
          throw domain_error( "gate " + std::to_string( g ) + " references gate " + std::to_string( gt.b ) + " which is not defined before it" );
        }
        [[fallthrough]];
      case gate_kind::not_:
        if ( gt.a >= g )
        {
          throw domain_error( "gate " + std::to_string( g ) + " references gate " + std::to_string( gt.a ) + " which is not defined before it" );
        }
        break;
      }
    }
    if ( output_ >= gates_.size() )
    {
      throw domain_error( "output gate " + std::to_string( output_ ) + " does not exist" );
    }
  }

  uint32_t num_vars() const noexcept { return num_vars_; }
  std::size_t num_gates() const noexcept { return gates_.size(); }
  std::span<gate const> gates() const noexcept { return gates_; }
  gate const& operator[]( gate_id g ) const { return gates_.at( g ); }
  gate_id output() const noexcept { return output_; }

  std::size_t num_inner_gates() const noexcept
  {
    return std::count_if( gates_.begin(), gates_.end(), []( auto const& g ) { return g.is_inner(); } );
  }

  friend bool operator==( circuit const&, circuit const& ) = default;

private:
  uint32_t num_vars_;
  std::vector<gate> gates_;
  gate_id output_;
};

/*! \brief Appends gates one at a time; rejects forward references at insertion. */
class circuit_builder
{
public:
  explicit circuit_builder( uint32_t num_vars ) : num_vars_( num_vars ) {}

  uint32_t num_vars() const noexcept { return num_vars_; }
  std::size_t size() const noexcept { return gates_.size(); }
  gate const& operator[]( gate_id g ) const { return gates_.at( g ); }

  gate_id add_input( uint32_t var )
  {
    if ( var >= num_vars_ )
    {
      throw domain_error( "variable " + std::to_string( var ) + " out of range" );
    }
    return push( gate::input( var ) );
  }

  gate_id add_constant( bool value ) { return push( gate::constant( value ) ); }

  gate_id add_and( gate_id x, gate_id y )
  {
    check( x );
    check( y );
    return push( gate::and_of( x, y ) );
  }

  gate_id add_or( gate_id x, gate_id y )
  {
    check( x );
    check( y );
    return push( gate::or_of( x, y ) );
  }

  gate_id add_not( gate_id x )
  {
    check( x );
    return push( gate::not_of( x ) );
  }

  gate_id add( gate const& g )
  {
    switch ( g.kind )
    {
    case gate_kind::input:
      return add_input( g.a );
    case gate_kind::constant:
      return add_constant( g.a != 0u );
    case gate_kind::and_:
      return add_and( g.a, g.b );
    case gate_kind::or_:
      return add_or( g.a, g.b );
    case gate_kind::not_:
      return add_not( g.a );
    }
    return 0u;
  }

  /*! \brief Copies `c` into this builder with its input gates replaced by `var_map[var]`; returns the copied output. */
  gate_id append( circuit const& c, std::span<gate_id const> var_map )
  {
    std::vector<gate_id> map( c.num_gates() );
    for ( gate_id g = 0; g < c.num_gates(); ++g )
    {
      auto const& gt = c[g];
      switch ( gt.kind )
      {
      case gate_kind::input:
        map[g] = var_map[gt.a];
        break;
      case gate_kind::constant:
        map[g] = add_constant( gt.a != 0u );
        break;
      case gate_kind::and_:
        map[g] = add_and( map[gt.a], map[gt.b] );
        break;
      case gate_kind::or_:
        map[g] = add_or( map[gt.a], map[gt.b] );
        break;
      case gate_kind::not_:
        map[g] = add_not( map[gt.a] );
        break;
      }
    }
    return map[c.output()];
  }

  circuit build( gate_id output ) const& { return circuit( num_vars_, gates_, output ); }
  circuit build( gate_id output ) && { return circuit( num_vars_, std::move( gates_ ), output ); }

private:
  void check( gate_id g ) const
  {
    if ( g >= gates_.size() )
    {
      throw domain_error( "reference to undefined gate " + std::to_string( g ) );
    }
  }

  gate_id push( gate const& g )
  {
    gates_.push_back( g );
    return static_cast<gate_id>( gates_.size() - 1u );
  }

  uint32_t num_vars_;
  std::vector<gate> gates_;
};

/*! \brief Value of every gate under one input. */
struct activation
{
  std::vector<bool> bits;

  bool operator[]( gate_id g ) const { return bits[g]; }
};

struct evaluation
{
  bool output;
  activation values;
};

inline evaluation evaluate( circuit const& c, assignment const& x )
{
  if ( x.size() != c.num_vars() )
  {
    throw domain_error( "input has " + std::to_string( x.size() ) + " bits, circuit expects " + std::to_string( c.num_vars() ) );
  }
  std::vector<bool> v( c.num_gates() );
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    switch ( gt.kind )
    {
    case gate_kind::input:
      v[g] = x[gt.a];
      break;
    case gate_kind::constant:
      v[g] = gt.a != 0u;
      break;
    case gate_kind::and_:
      v[g] = v[gt.a] && v[gt.b];
      break;
    case gate_kind::or_:
      v[g] = v[gt.a] || v[gt.b];
      break;
    case gate_kind::not_:
      v[g] = !v[gt.a];
      break;
    }
  }
  bool const out = v[c.output()];
  return { out, activation{ std::move( v ) } };
}

/*! \brief Number of activated inner gates under `x`. */
inline uint32_t energy( circuit const& c, assignment const& x )
{
  auto const ev = evaluate( c, x );
  uint32_t e = 0;
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    if ( c[g].is_inner() && ev.values[g] )
    {
      ++e;
    }
  }
  return e;
}

/*! \brief Gates from which a directed path reaches `from` (including `from`). */
inline std::vector<bool> transitive_fanin( circuit const& c, gate_id from )
{
  if ( from >= c.num_gates() )
  {
    throw domain_error( "gate " + std::to_string( from ) + " does not exist" );
  }
  std::vector<bool> seen( c.num_gates() );
  seen[from] = true;
  for ( gate_id g = from + 1u; g-- > 0u; )
  {
    if ( !seen[g] )
    {
      continue;
    }
    auto const& gt = c[g];
    if ( gt.fanin_size() >= 1u )
    {
      seen[gt.a] = true;
    }
    if ( gt.fanin_size() == 2u )
    {
      seen[gt.b] = true;
    }
  }
  return seen;
}

/*! \brief Variables whose input gates are covered by gate `from`, ascending. */
inline std::vector<uint32_t> covered_inputs( circuit const& c, gate_id from )
{
  auto const seen = transitive_fanin( c, from );
  std::vector<bool> vars( c.num_vars() );
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    if ( seen[g] && c[g].kind == gate_kind::input )
    {
      vars[c[g].a] = true;
    }
  }
  std::vector<uint32_t> r;
  for ( uint32_t i = 0; i < c.num_vars(); ++i )
  {
    if ( vars[i] )
    {
      r.push_back( i );
    }
  }
  return r;
}

inline std::size_t count_not_gates( circuit const& c )
{
  auto const gs = c.gates();
  return std::count_if( gs.begin(), gs.end(), []( auto const& g ) { return g.kind == gate_kind::not_; } );
}

inline bool is_monotone( circuit const& c ) { return count_not_gates( c ) == 0u; }

/*! \brief Removes every gate the output does not cover; relative order is kept. */
inline circuit prune_dead( circuit const& c )
{
  auto const live = transitive_fanin( c, c.output() );
  std::vector<gate_id> map( c.num_gates() );
  std::vector<gate> gates;
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    if ( !live[g] )
    {
      continue;
    }
    auto gt = c[g];
    if ( gt.fanin_size() >= 1u )
    {
      gt.a = map[gt.a];
    }
    if ( gt.fanin_size() == 2u )
    {
      gt.b = map[gt.b];
    }
    map[g] = static_cast<gate_id>( gates.size() );
    gates.push_back( gt );
  }
  return circuit( c.num_vars(), std::move( gates ), map[c.output()] );
}

} // namespace ecx
