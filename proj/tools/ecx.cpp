/*!
  \file ecx.cpp
  \brief Command-line front end

  Exit status is 0 on success, 1 on domain errors (bad input files, caps,
  failed checks) and 2 on usage errors.
*/

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <ecx/ecx.hpp>

namespace
{

using namespace ecx;

std::string slurp( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw domain_error( "cannot open '" + path + "'" );
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim( std::string s )
{
  auto const first = s.find_first_not_of( " \t\r\n" );
  if ( first == std::string::npos )
  {
    return {};
  }
  auto const last = s.find_last_not_of( " \t\r\n" );
  return s.substr( first, last - first + 1u );
}

/* literal text or @path */
std::string literal_or_file( std::string const& arg )
{
  return trim( !arg.empty() && arg[0] == '@' ? slurp( arg.substr( 1 ) ) : arg );
}

truth_table read_tt( std::string const& arg )
{
  return truth_table::from_string( literal_or_file( arg ) );
}

circuit read_circuit( std::string const& path )
{
  if ( path.empty() || path == "-" )
  {
    return read_netlist( std::cin );
  }
  std::ifstream in( path );
  if ( !in )
  {
    throw domain_error( "cannot open '" + path + "'" );
  }
  return read_netlist( in );
}

void print_report( check_report const& r )
{
  std::cout << "check=" << r.check << " passed=" << ( r.passed ? 1 : 0 );
  for ( auto const& [k, v] : r.fields )
  {
    std::cout << ' ' << k << '=' << v;
  }
  std::cout << '\n';
}

void print_stats( compile_stats const& s )
{
  std::cout << "# gates_total=" << s.gates_total << '\n'
            << "# not_gates=" << s.not_gates << '\n'
            << "# measured_energy=" << s.measured_energy << '\n'
            << "# exhaustive=" << ( s.exhaustive ? 1 : 0 ) << '\n'
            << "# bound_claimed=" << s.bound_claimed << '\n'
            << "# bound_satisfied=" << ( s.bound_satisfied ? 1 : 0 ) << '\n';
}

std::string join_gates( std::vector<gate_id> const& gs )
{
  std::string s;
  for ( auto g : gs )
  {
    s += ( s.empty() ? "g" : " g" ) + std::to_string( g );
  }
  return s;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "energy complexity toolkit for {AND, OR, NOT} circuits", "ecx" };
  app.require_subcommand( 1 );
  uint32_t cap = default_exhaustive_cap;
  app.add_option( "--cap", cap, "largest variable count for exhaustive energy" )->check( CLI::PositiveNumber );

  auto* measure = app.add_subcommand( "measure", "complexity measures of a truth table" );
  std::string tt;
  measure->add_option( "--tt", tt, "truth table bits (index 0 first) or @file" )->required();

  auto* compile = app.add_subcommand( "compile", "compile a decision tree into a circuit" );
  std::string tree_text;
  uint32_t tree_vars = 0;
  bool stats = false;
  compile->add_option( "--tree", tree_text, "s-expression such as (x1 0 1), or @file" )->required();
  compile->add_option( "--vars", tree_vars, "number of circuit inputs (default: largest label)" );
  compile->add_flag( "--stats", stats, "emit compilation statistics as comments" );

  auto* gen = app.add_subcommand( "gen", "generate a circuit" );
  gen->require_subcommand( 1 );
  uint32_t gen_n = 0;
  std::string gen_g;
  gen->add_flag( "--stats", stats, "emit compilation statistics as comments" );
  auto* gen_or = gen->add_subcommand( "or", "OR_n in sqrt(n) blocks" );
  gen_or->add_option( "--n", gen_n )->required()->check( CLI::PositiveNumber );
  auto* gen_addr = gen->add_subcommand( "addr", "address function" );
  gen_addr->add_option( "--n", gen_n )->required();
  auto* gen_eaddr = gen->add_subcommand( "eaddr", "extended address function" );
  gen_eaddr->add_option( "--n", gen_n )->required();
  gen_eaddr->add_option( "--g", gen_g, "selector truth table or @file" )->required();
  auto* gen_linear = gen->add_subcommand( "linear", "optimal tree compiled with one gate per node" );
  gen_linear->add_option( "--tt", tt )->required();
  auto* gen_quadratic = gen->add_subcommand( "quadratic", "optimal tree compiled level by level" );
  gen_quadratic->add_option( "--tt", tt )->required();
  for ( auto* sub : { gen_or, gen_addr, gen_eaddr, gen_linear, gen_quadratic } )
  {
    sub->add_flag( "--stats", stats, "emit compilation statistics as comments" );
  }

  auto* energy_cmd = app.add_subcommand( "energy", "energy of a circuit" );
  std::string circuit_path;
  bool exhaustive = false;
  uint64_t samples = 0;
  uint64_t seed = 1;
  std::string input_bits;
  energy_cmd->add_option( "--circuit", circuit_path, "netlist file (default: standard input)" );
  auto* ex_flag = energy_cmd->add_flag( "--exhaustive", exhaustive, "maximize over all inputs (default)" );
  auto* sample_opt = energy_cmd->add_option( "--sample", samples, "maximize over this many random inputs" )->check( CLI::PositiveNumber );
  energy_cmd->add_option( "--seed", seed, "random seed for --sample" )->needs( sample_opt );
  auto* input_opt = energy_cmd->add_option( "--input", input_bits, "energy on one input, variable 1 first" );
  ex_flag->excludes( sample_opt )->excludes( input_opt );
  sample_opt->excludes( input_opt );

  auto* oracle = app.add_subcommand( "oracle", "least-energy circuit by exhaustive search" );
  uint32_t max_gates = 6;
  bool show_witness = false;
  oracle->add_option( "--tt", tt )->required();
  oracle->add_option( "--max-gates", max_gates );
  oracle->add_flag( "--witness", show_witness, "print the witness netlist after the report" );

  auto* analyze = app.add_subcommand( "analyze", "lower-bound analyses of a circuit" );
  analyze->require_subcommand( 1 );
  auto* analyze_tree = analyze->add_subcommand( "tree", "decision tree induced by the NOT gates" );
  analyze_tree->add_option( "--circuit", circuit_path );
  auto* analyze_path = analyze->add_subcommand( "path", "flip path for a sensitive input" );
  uint32_t flip = 0;
  analyze_path->add_option( "--circuit", circuit_path );
  analyze_path->add_option( "--input", input_bits )->required();
  analyze_path->add_option( "--flip", flip, "variable to flip, counted from 1" )->required()->check( CLI::PositiveNumber );

  auto* analyze_restrict = analyze->add_subcommand( "restrict", "fix the variables under the first NOT gate until none is left" );
  int restrict_value = 0;
  analyze_restrict->add_option( "--circuit", circuit_path );
  analyze_restrict->add_option( "--value", restrict_value, "constant for the fixed variables" )->check( CLI::Range( 0, 1 ) );

  auto* verify = app.add_subcommand( "verify", "check an energy inequality" );
  std::string suite;
  verify->add_option( "--circuit", circuit_path );
  verify->add_option( "--suite", suite )->required()->check( CLI::IsMember( { "lemma4", "lemma5", "bounds" } ) );

  auto* export_cmd = app.add_subcommand( "export", "print a circuit" );
  std::string format = "netlist";
  export_cmd->add_option( "--circuit", circuit_path );
  export_cmd->add_option( "--format", format )->check( CLI::IsMember( { "dot", "netlist" } ) );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    return app.exit( e ) == 0 ? 0 : 2;
  }

  try
  {
    if ( measure->parsed() )
    {
      auto const f = read_tt( tt );
      auto const r = measure_all( f );
      std::cout << "n=" << r.num_vars << " d=" << r.d << " s=" << r.s << " psens=" << r.psens << " bs=" << r.bs << " c=" << r.c
                << " deg=" << r.deg << " dependent=" << r.dependent.size() << " nondegenerate=" << ( is_nondegenerate( f ) ? 1 : 0 ) << '\n';
    }
    else if ( compile->parsed() )
    {
      auto const t = decision_tree::from_string( literal_or_file( tree_text ) );
      auto const used = queried_variables( t );
      auto const n = tree_vars != 0u ? tree_vars : ( used.empty() ? 0u : used.back() + 1u );
      auto const c = compile_linear( t, n );
      if ( stats )
      {
        print_stats( audit_compilation( c, linear_energy_bound( used.size(), t.depth() ), std::min( cap, max_table_vars ) ) );
      }
      write_netlist( c, std::cout );
    }
    else if ( gen->parsed() )
    {
      std::optional<circuit> c;
      int64_t bound = 0;
      if ( gen_or->parsed() )
      {
        c = build_or_sqrt( gen_n );
        bound = or_sqrt_energy_bound( gen_n );
      }
      else if ( gen_addr->parsed() )
      {
        c = build_addr( gen_n );
        bound = 3 * int64_t( gen_n );
      }
      else if ( gen_eaddr->parsed() )
      {
        c = build_eaddr( gen_n, read_tt( gen_g ) );
        bound = 6 * int64_t( gen_n ) + 2;
      }
      else if ( gen_linear->parsed() )
      {
        auto const [d, t] = decision_tree_complexity( read_tt( tt ) );
        c = compile_linear( t, read_tt( tt ).num_vars() );
        bound = linear_energy_bound( queried_variables( t ).size(), d );
      }
      else
      {
        auto const q = compile_quadratic_detailed( read_tt( tt ) );
        c = q.result;
        bound = quadratic_energy_bound( q.depth );
      }
      if ( stats )
      {
        print_stats( audit_compilation( *c, bound, std::min( cap, max_table_vars ) ) );
      }
      write_netlist( *c, std::cout );
    }
    else if ( energy_cmd->parsed() )
    {
      auto const c = read_circuit( circuit_path );
      if ( !input_opt->empty() )
      {
        auto const x = assignment_from_string( input_bits );
        auto const ev = evaluate( c, x );
        std::cout << "energy=" << energy( c, x ) << " output=" << ( ev.output ? 1 : 0 ) << '\n';
      }
      else
      {
        auto const r = samples != 0u ? max_energy( c, sampled_search{ samples, seed } ) : max_energy( c, exhaustive_search{ cap } );
        std::cout << "ec=" << r.max_energy << " witness=" << to_string( r.witness )
                  << " mode=" << ( r.mode == energy_mode::exhaustive ? "exhaustive" : "sampled" ) << " inputs=" << r.inputs_checked << '\n';
      }
    }
    else if ( oracle->parsed() )
    {
      auto const r = brute_force_ec( read_tt( tt ), max_gates );
      std::cout << "found=" << ( r.found ? 1 : 0 ) << " lower=" << r.lower;
      if ( r.found )
      {
        std::cout << " upper=" << r.upper;
      }
      std::cout << " certified=" << ( r.certified ? 1 : 0 ) << " states=" << r.states_explored << '\n';
      if ( show_witness && r.witness )
      {
        write_netlist( *r.witness, std::cout );
      }
    }
    else if ( analyze_tree->parsed() )
    {
      auto const r = circuit_to_tree( read_circuit( circuit_path ) );
      std::cout << "not_gates=" << join_gates( r.neg_order ) << '\n' << "partition=";
      for ( std::size_t i = 0; i < r.partition.size(); ++i )
      {
        std::cout << ( i ? " {" : "{" );
        for ( std::size_t j = 0; j < r.partition[i].size(); ++j )
        {
          std::cout << ( j ? ",x" : "x" ) << r.partition[i][j] + 1u;
        }
        std::cout << '}';
      }
      std::cout << '\n'
                << "induced_depth=" << r.induced_depth << '\n'
                << "optimal_depth=" << r.optimal_depth << '\n'
                << "equivalent=" << ( r.equivalent ? 1 : 0 ) << '\n'
                << "tree=" << r.induced_tree.to_string() << '\n';
    }
    else if ( analyze_path->parsed() )
    {
      auto const c = read_circuit( circuit_path );
      auto const w = sensitive_path( c, assignment_from_string( input_bits ), flip - 1u );
      std::cout << "path=" << join_gates( w.path ) << '\n'
                << "length=" << w.length << '\n'
                << "energy_x=" << w.energy_x << '\n'
                << "energy_flipped=" << w.energy_flipped << '\n'
                << "holds=" << ( w.energy_x + w.energy_flipped >= w.length ? 1 : 0 ) << '\n';
    }
    else if ( analyze_restrict->parsed() )
    {
      auto const rounds = restriction_rounds( read_circuit( circuit_path ), restrict_value == 1 );
      for ( std::size_t i = 0; i < rounds.size(); ++i )
      {
        auto const& r = rounds[i];
        std::cout << "round=" << i << " fixed={";
        for ( std::size_t j = 0; j < r.fixed.size(); ++j )
        {
          std::cout << ( j ? ",x" : "x" ) << r.fixed[j] + 1u;
        }
        std::cout << "} not_gates=" << r.not_gates << " inner_gates=" << r.result.num_inner_gates() << " ec=" << r.energy << '\n';
      }
    }
    else if ( verify->parsed() )
    {
      auto const c = read_circuit( circuit_path );
      auto const r = suite == "lemma4" ? verify_lemma4( c, cap ) : suite == "lemma5" ? verify_lemma5( c, cap ) : theorem_bounds_audit( c, cap );
      print_report( r );
      if ( !r.passed )
      {
        std::cerr << "error: " << suite << " check failed\n";
        return 1;
      }
    }
    else if ( export_cmd->parsed() )
    {
      auto const c = read_circuit( circuit_path );
      if ( format == "dot" )
      {
        write_dot( c, std::cout );
      }
      else
      {
        write_netlist( c, std::cout );
      }
    }
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
