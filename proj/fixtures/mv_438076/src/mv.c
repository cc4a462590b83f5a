/* mv -- move or rename files */

#include <config.h>
#include <stdio.h>
#include <getopt.h>
#include <sys/types.h>
#include <sys/stat.h>

#include "system.h"
#include "backupfile.h"
#include "copy.h"
#include "remove.h"

static struct option const long_options[] =
{
  {"backup", optional_argument, NULL, 'b'},
  {"force", no_argument, NULL, 'f'},
  {"interactive", no_argument, NULL, 'i'},
  {"verbose", no_argument, NULL, 'v'},
  {NULL, 0, NULL, 0}
};

static void
cp_option_init (struct cp_options *x)
{
  x->backup_type = no_backups;
  x->move_mode = 1;
  x->interactive = 0;
  x->preserve_mode = 1;
  x->preserve_timestamps = 1;
  x->unlink_dest_before_opening = 0;
  x->unlink_dest_after_failed_open = 0;
  x->verbose = 0;
}

/* Move SOURCE onto DEST.  If the rename could not be done directly the
   source has been copied, so remove it now. */
static int
do_move (char const *source, char const *dest, const struct cp_options *x)
{
  int copy_into_self;
  int rename_succeeded;
  int fail = copy (source, dest, 0, x, &copy_into_self, &rename_succeeded);

  if (!fail && !rename_succeeded && !copy_into_self)
    {
      struct rm_options rm_options;
      rm_option_init (&rm_options);
      fail = rm (1, &source, &rm_options) != RM_OK;
    }
  return fail;
}

/* Move SOURCE into directory DEST_DIR or onto file DEST. */
static int
movefile (char *source, char *dest, int dest_is_dir, const struct cp_options *x)
{
  int fail;

  if (dest_is_dir)
    {
      char *new_dest = path_concat (dest, base_name (source), NULL);
      fail = do_move (source, new_dest, x);
      free (new_dest);
    }
  else
    fail = do_move (source, dest, x);
  return fail;
}

int
main (int argc, char **argv)
{
  int c;
  int errors = 0;
  struct cp_options x;
  struct stat st;
  int n_files;
  char **file;
  int dest_is_dir;

  cp_option_init (&x);
  while ((c = getopt_long (argc, argv, "bfiv", long_options, NULL)) != -1)
    {
      switch (c)
        {
        case 'b':
          x.backup_type = simple_backups;
          break;
        case 'f':
          x.interactive = 0;
          break;
        case 'i':
          x.interactive = 1;
          break;
        case 'v':
          x.verbose = 1;
          break;
        default:
          usage (EXIT_FAILURE);
        }
    }

  n_files = argc - optind;
  file = argv + optind;
  if (n_files < 2)
    {
      error (0, 0, _("missing destination file operand"));
      usage (EXIT_FAILURE);
    }

  dest_is_dir = stat (file[n_files - 1], &st) == 0 && S_ISDIR (st.st_mode);
  if (n_files == 2 && !dest_is_dir)
    errors = movefile (file[0], file[1], 0, &x);
  else
    {
      int i;
      for (i = 0; i < n_files - 1; ++i)
        errors |= movefile (file[i], file[n_files - 1], dest_is_dir, &x);
    }
  exit (errors);
}
