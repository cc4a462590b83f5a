/* mkdir -- make directories */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>

#include "system.h"

int
main (int argc, char **argv)
{
  mode_t newmode = S_IRWXU | S_IRWXG | S_IRWXO;
  char const *specified_mode = NULL;
  int exit_status = EXIT_SUCCESS;
  int optc;

  while ((optc = getopt (argc, argv, "m:p")) != -1)
    {
      if (optc == 'm')
        specified_mode = optarg;
    }

  if (specified_mode)
    newmode = mode_adjust (newmode, mode_compile (specified_mode));

  for (; optind < argc; ++optind)
    {
      if (mkdir (argv[optind], newmode) != 0)
        {
          error (0, errno, _("cannot create directory %s"), quote (argv[optind]));
          exit_status = EXIT_FAILURE;
        }
      else if (specified_mode && chmod (argv[optind], newmode) != 0)
        {
          error (0, errno, _("cannot set permissions of directory %s"), quote (argv[optind]));
          exit_status = EXIT_FAILURE;
        }
    }
  exit (exit_status);
}
