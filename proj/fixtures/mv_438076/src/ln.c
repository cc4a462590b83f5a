/* ln -- make links between files */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>
#include <unistd.h>

#include "system.h"

static int symbolic_link;
static int remove_existing_files;

/* Make a link DEST to the (usually) existing file SOURCE. */
static int
do_link (char const *source, char const *dest)
{
  struct stat dest_stats;
  int dest_exists = lstat (dest, &dest_stats) == 0;

  if (dest_exists && remove_existing_files)
    {
      if (unlink (dest) != 0)
        {
          error (0, errno, _("cannot remove %s"), quote (dest));
          return 1;
        }
    }

  if ((symbolic_link ? symlink (source, dest) : link (source, dest)) != 0)
    {
      error (0, errno, _("creating link %s to %s"), quote_n (0, dest), quote_n (1, source));
      return 1;
    }
  return 0;
}

int
main (int argc, char **argv)
{
  int c;

  while ((c = getopt (argc, argv, "fs")) != -1)
    {
      if (c == 'f')
        remove_existing_files = 1;
      else if (c == 's')
        symbolic_link = 1;
    }
  if (argc - optind != 2)
    usage (EXIT_FAILURE);
  exit (do_link (argv[optind], argv[optind + 1]));
}
